#include "aoi/channel.hpp"

namespace aoi {

namespace {

// splitmix64 finalizer (Vigna). Full-avalanche, cheap, and fine for turning
// a counter into an independent-looking seed.
std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace

ErasureStream derive_stream(std::uint64_t master_seed, std::uint64_t path_index) {
    std::uint64_t seed = splitmix64(master_seed ^ splitmix64(path_index));
    return ErasureStream(seed);
}

}  // namespace aoi
