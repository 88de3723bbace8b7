#include "aoi/adaptive.hpp"

#include <algorithm>
#include <cassert>

namespace aoi {

SymbolDescriptor select_symbol(const AdaptiveState& state) {
    SymbolDescriptor d;
    d.w1_gen = state.w1_gen;
    d.w2_gen = state.w2_gen;
    if (state.phase == Phase::Phase1) {
        d.kind = SymbolKind::RatelessOfW1;
        d.index = 0;
    } else if (state.c == CodingChoice::Uncoded) {
        d.kind = SymbolKind::UncodedW1;
        d.index = state.k1 + 1;
    } else {
        d.kind = SymbolKind::MixedW1W2;
        d.index = state.k1 + 1;
    }
    return d;
}

StepEvents adaptive_step(AdaptiveState& state, ErasurePair v, std::int64_t t, int k) {
    assert(state.k1 >= 0 && state.k1 < k && state.k2 >= 0 && state.k2 <= k);
    assert((state.phase == Phase::Phase1) == (state.w1_gen == state.w2_gen));
    StepEvents out;

    if (state.phase == Phase::Phase1) {
        state.k1 = std::min(state.k1 + v.v1, k);
        state.k2 = std::min(state.k2 + v.v2, k);
        if (state.k1 == k) {
            out.add(User::User1, t, state.w1_gen);
            state.w1_gen = t + 1;
            state.k1 = 0;
            if (state.k2 == k) {
                // User 2 collected the whole update too: the cycle closes in
                // phase 1 and its decode is charged at the closing slot.
                out.add(User::User2, t, state.w2_gen);
                state.w2_gen = t + 1;
                state.k2 = 0;
            } else {
                state.phase = Phase::Phase2;
                state.c = CodingChoice::Uncoded;
            }
        }
    } else if (state.c == CodingChoice::Uncoded) {
        // The symbol carries w1 content only; k2 cannot move.
        state.k1 += v.v1;
        if (state.k1 == k) {
            out.add(User::User1, t, state.w1_gen);
            state.w1_gen = t + 1;
            state.k1 = 0;
            if (state.k2 == k) {
                state.w2_gen = t + 1;
                state.k2 = 0;
                state.phase = Phase::Phase1;
            }
        }
        state.c = (v.v1 == 0 && v.v2 == 1) ? CodingChoice::Coded : CodingChoice::Uncoded;
    } else {
        int k2_before = state.k2;
        state.k1 = std::min(state.k1 + v.v1, k);
        state.k2 = std::min(state.k2 + v.v2, k);
        if (k2_before < k && state.k2 == k) {
            // User 2 strips the known w1(k1+1) component and completes w2.
            out.add(User::User2, t, state.w2_gen);
        }
        if (state.k1 == k) {
            out.add(User::User1, t, state.w1_gen);
            state.w1_gen = t + 1;
            state.k1 = 0;
            if (state.k2 == k) {
                state.w2_gen = t + 1;
                state.k2 = 0;
                state.phase = Phase::Phase1;
            }
        }
        state.c = (v.v1 == 1) ? CodingChoice::Uncoded : CodingChoice::Coded;
    }

    assert((state.phase == Phase::Phase1) == (state.w1_gen == state.w2_gen));
    return out;
}

PathTrace simulate_adaptive(const SimConfig& cfg, const ChannelParams& ch,
                            std::uint64_t path_index) {
    require_valid(cfg, ch);

    ErasureStream stream = derive_stream(cfg.master_seed, path_index);

    PathTrace trace;
    trace.ages1.resize(static_cast<std::size_t>(cfg.horizon));
    trace.ages2.resize(static_cast<std::size_t>(cfg.horizon));

    std::int64_t age1 = 0;
    std::int64_t age2 = 0;
    std::int64_t cycle_start = 1;
    std::int64_t phase1_end = 0;
    std::int64_t user2_decode_slot = 0;

    drive_adaptive(cfg.horizon, cfg.k, ch, stream,
                   [&](std::int64_t t, const SymbolDescriptor&, ErasurePair,
                       const AdaptiveState& before, const AdaptiveState& after,
                       const StepEvents& events) {
        ++age1;
        ++age2;
        for (int i = 0; i < events.count; ++i) {
            const DecodeEvent& e = events.events[static_cast<std::size_t>(i)];
            (e.user == User::User1 ? age1 : age2) = e.reset_age();
            trace.decode_events.push_back(e);
            if (e.user == User::User2 && before.phase == Phase::Phase2) {
                user2_decode_slot = t;
            }
        }
        trace.ages1[static_cast<std::size_t>(t - 1)] = static_cast<std::uint32_t>(age1);
        trace.ages2[static_cast<std::size_t>(t - 1)] = static_cast<std::uint32_t>(age2);

        if (before.phase == Phase::Phase1 && after.phase == Phase::Phase2) {
            phase1_end = t;
        } else if (before.phase == Phase::Phase1 && after.w1_gen == t + 1 &&
                   after.phase == Phase::Phase1) {
            // Cycle closed within phase 1.
            trace.cycles.push_back(CycleRecord{t - cycle_start + 1, 0, 0});
            cycle_start = t + 1;
        } else if (before.phase == Phase::Phase2 && after.phase == Phase::Phase1) {
            trace.cycles.push_back(CycleRecord{phase1_end - cycle_start + 1,
                                               user2_decode_slot - phase1_end,
                                               t - user2_decode_slot});
            cycle_start = t + 1;
        }
        return true;
    });
    return trace;
}

}  // namespace aoi
