#ifndef AOI_GREEDY_HPP
#define AOI_GREEDY_HPP

#include <array>
#include <cstdint>

#include "aoi/channel.hpp"
#include "aoi/model.hpp"

namespace aoi {

/// Decode events produced by a single slot transition (at most one per user).
struct StepEvents {
    std::array<DecodeEvent, 2> events{};
    int count = 0;

    void add(User user, std::int64_t slot, std::int64_t generation_slot) {
        events[static_cast<std::size_t>(count++)] = DecodeEvent{user, slot, generation_slot};
    }
};

/// Baseline scheme: rateless symbols of one in-flight update, restarted with
/// a fresh update the moment user 1 decodes. User 2's partial progress on the
/// abandoned update is useless and discarded.
struct GreedyState {
    std::int64_t gen_slot = 1;  // generation slot of the in-flight update
    int n1 = 0;                 // symbols received by user 1, in [0,K]
    int n2 = 0;                 // symbols received by user 2, in [0,K]
};

/// One slot under the greedy scheme. n_i grows by v_i (capped at K); user 2
/// decodes the first time n2 hits K; when n1 hits K user 1 decodes and the
/// state restarts with the update generated at t+1.
StepEvents greedy_step(GreedyState& state, ErasurePair v, std::int64_t t, int k);

/// Runs greedy_step over cfg.horizon slots on the stream derived from
/// (cfg.master_seed, path_index).
PathTrace simulate_greedy(const SimConfig& cfg, const ChannelParams& ch,
                          std::uint64_t path_index = 0);

}  // namespace aoi

#endif
