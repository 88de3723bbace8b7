#ifndef AOI_ADAPTIVE_HPP
#define AOI_ADAPTIVE_HPP

#include <cstdint>

#include "aoi/channel.hpp"
#include "aoi/greedy.hpp"  // StepEvents
#include "aoi/model.hpp"

namespace aoi {

enum class Phase : std::uint8_t { Phase1, Phase2 };

/// Phase-2 symbol choice: an uncoded symbol of w1, or a random linear mix of
/// w1(k1+1) with the symbols of w2.
enum class CodingChoice : std::uint8_t { Uncoded, Coded };

enum class SymbolKind : std::uint8_t {
    RatelessOfW1,  // phase 1: random combination over all of w1 (= w2)
    UncodedW1,     // phase 2: plain w1(index)
    MixedW1W2,     // phase 2: w1(index) mixed with w2
};

/// What the source broadcasts in one slot. `index` is the uncoded component
/// k1+1 for UncodedW1/MixedW1W2 and 0 for RatelessOfW1.
struct SymbolDescriptor {
    SymbolKind kind = SymbolKind::RatelessOfW1;
    int index = 0;
    std::int64_t w1_gen = 0;
    std::int64_t w2_gen = 0;
};

/// Live state of the adaptive coding and updating scheme. Phase 1 holds
/// exactly when both users chase the same update (w1_gen == w2_gen).
struct AdaptiveState {
    Phase phase = Phase::Phase1;
    CodingChoice c = CodingChoice::Uncoded;  // meaningful in Phase2
    int k1 = 0;
    int k2 = 0;
    std::int64_t w1_gen = 1;
    std::int64_t w2_gen = 1;
};

/// Symbol the source broadcasts in the coming slot, as a function of state.
SymbolDescriptor select_symbol(const AdaptiveState& state);

/// One slot transition of the adaptive scheme:
///   phase 1      : both counters grow with the rateless symbol; user-1
///                  decode ends the phase (cycle closes too if k2 = K).
///   phase 2, c=1 : only k1 grows; next c is Coded iff v = (0,1).
///   phase 2, c=2 : both grow; user 2 decodes the first time k2 hits K;
///                  next c is Uncoded iff v1 = 1.
/// The cycle closes when a user-1 decode observes k2 = K.
StepEvents adaptive_step(AdaptiveState& state, ErasurePair v, std::int64_t t, int k);

/// Drives adaptive_step over the horizon, visiting every slot. The visitor
/// sees the broadcast symbol, the erasure outcome, the states before/after
/// and the decode events; the rank-oracle verifier and the plain simulator
/// share this loop so they can never disagree on scheme behavior.
template <typename SlotVisitor>
void drive_adaptive(std::int64_t horizon, int k, const ChannelParams& ch,
                    ErasureStream& stream, SlotVisitor&& visit) {
    AdaptiveState state;
    for (std::int64_t t = 1; t <= horizon; ++t) {
        SymbolDescriptor symbol = select_symbol(state);
        ErasurePair v = next_pair(stream, ch);
        AdaptiveState before = state;
        StepEvents events = adaptive_step(state, v, t, k);
        if (!visit(t, symbol, v, before, state, events)) {
            break;
        }
    }
}

/// Full-trace simulation with per-cycle (T1, T2, T3) records.
PathTrace simulate_adaptive(const SimConfig& cfg, const ChannelParams& ch,
                            std::uint64_t path_index = 0);

}  // namespace aoi

#endif
