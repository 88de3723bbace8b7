#ifndef AOI_CHANNEL_HPP
#define AOI_CHANNEL_HPP

#include <cstdint>
#include <random>

#include "aoi/model.hpp"

namespace aoi {

/// Transmission status of one broadcast slot: v = 1 means delivered.
struct ErasurePair {
    int v1 = 0;
    int v2 = 0;
};

/// Deterministic per-path uniform source. The same path_seed always yields
/// the identical draw sequence within one build; cross-build bit-exactness
/// is not promised.
class ErasureStream {
public:
    explicit ErasureStream(std::uint64_t path_seed)
        : path_seed_(path_seed), rng_(path_seed) {}

    std::uint64_t path_seed() const { return path_seed_; }

    /// Uniform double in [0,1) with 53 random bits.
    double next_uniform() {
        return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t path_seed_;
    std::mt19937_64 rng_;
};

/// Stable 64-bit mixing of (master_seed, path_index); distinct indices give
/// statistically independent streams.
ErasureStream derive_stream(std::uint64_t master_seed, std::uint64_t path_index);

/// One slot of the two independent Bernoulli links. Exactly two uniforms are
/// consumed per slot (user 1 first), so streams stay alignment-stable across
/// schemes and the greedy/adaptive sample-path coupling holds.
inline ErasurePair next_pair(ErasureStream& stream, const ChannelParams& ch) {
    ErasurePair v;
    v.v1 = stream.next_uniform() < ch.p1 ? 1 : 0;
    v.v2 = stream.next_uniform() < ch.p2 ? 1 : 0;
    return v;
}

}  // namespace aoi

#endif
