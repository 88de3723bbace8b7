#include "aoi/greedy.hpp"

#include <algorithm>
#include <cassert>

namespace aoi {

StepEvents greedy_step(GreedyState& state, ErasurePair v, std::int64_t t, int k) {
    assert(state.n1 < k && state.n2 <= k);
    StepEvents out;

    int n2_before = state.n2;
    state.n1 = std::min(state.n1 + v.v1, k);
    state.n2 = std::min(state.n2 + v.v2, k);

    if (n2_before < k && state.n2 == k) {
        out.add(User::User2, t, state.gen_slot);
    }
    if (state.n1 == k) {
        out.add(User::User1, t, state.gen_slot);
        state.gen_slot = t + 1;
        state.n1 = 0;
        state.n2 = 0;
    }
    return out;
}

PathTrace simulate_greedy(const SimConfig& cfg, const ChannelParams& ch,
                          std::uint64_t path_index) {
    require_valid(cfg, ch);

    ErasureStream stream = derive_stream(cfg.master_seed, path_index);
    GreedyState state;

    PathTrace trace;
    trace.ages1.resize(static_cast<std::size_t>(cfg.horizon));
    trace.ages2.resize(static_cast<std::size_t>(cfg.horizon));

    std::int64_t age1 = 0;  // delta_i(0) = 0: virtual update delivered at t = 0
    std::int64_t age2 = 0;
    for (std::int64_t t = 1; t <= cfg.horizon; ++t) {
        StepEvents ev = greedy_step(state, next_pair(stream, ch), t, cfg.k);
        ++age1;
        ++age2;
        for (int i = 0; i < ev.count; ++i) {
            const DecodeEvent& e = ev.events[static_cast<std::size_t>(i)];
            (e.user == User::User1 ? age1 : age2) = e.reset_age();
            trace.decode_events.push_back(e);
        }
        trace.ages1[static_cast<std::size_t>(t - 1)] = static_cast<std::uint32_t>(age1);
        trace.ages2[static_cast<std::size_t>(t - 1)] = static_cast<std::uint32_t>(age2);
    }
    return trace;
}

}  // namespace aoi
