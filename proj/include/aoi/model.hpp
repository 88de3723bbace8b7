#ifndef AOI_MODEL_HPP
#define AOI_MODEL_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace aoi {

enum class User : std::uint8_t { User1 = 1, User2 = 2 };

enum class Scheme : std::uint8_t { Greedy, Adaptive };

const char* to_string(Scheme s);

/// Per-slot delivery probabilities of the two independent erasure links.
/// q1/q2 are the complementary erasure probabilities used throughout the
/// closed-form expressions.
struct ChannelParams {
    double p1 = 0.0;  // user-1 delivery probability, in (0,1]
    double p2 = 0.0;  // user-2 delivery probability, in (0,1]

    double q1() const { return 1.0 - p1; }
    double q2() const { return 1.0 - p2; }
};

struct SimConfig {
    int k = 0;                        // symbols per update
    std::int64_t horizon = 0;         // slots per sample path
    int num_paths = 1;
    std::uint64_t master_seed = 1;
    Scheme scheme = Scheme::Greedy;
    bool oracle_mode = false;         // enable GF(2^8) rank verification
};

/// A successful decode at the end of slot `slot` of the update generated at
/// the beginning of slot `generation_slot`. The age resets to
/// slot - generation_slot.
struct DecodeEvent {
    User user = User::User1;
    std::int64_t slot = 0;
    std::int64_t generation_slot = 0;

    std::int64_t reset_age() const { return slot - generation_slot; }
};

/// One adaptive updating cycle: phase-1 length, phase-2a length (entry to
/// user-2 decode) and phase-2b length (user-2 decode to cycle close).
/// t2 = t3 = 0 when the cycle closed in phase 1.
struct CycleRecord {
    std::int64_t t1 = 0;
    std::int64_t t2 = 0;
    std::int64_t t3 = 0;
};

/// Full record of one simulated sample path. Ages are sampled at the end of
/// each slot t = 1..horizon; ages*(t-1) holds delta_i(t).
struct PathTrace {
    std::vector<std::uint32_t> ages1;
    std::vector<std::uint32_t> ages2;
    std::vector<DecodeEvent> decode_events;
    std::vector<CycleRecord> cycles;  // adaptive scheme only
};

struct ValidationReport {
    std::vector<std::string> errors;
    std::vector<std::string> warnings;

    bool ok() const { return errors.empty(); }
};

/// Discrete time average (1/T) sum_t delta(t). Throws std::invalid_argument
/// on an empty trace.
double mean_age(std::span<const std::uint32_t> trace_ages);

/// Checks hard invariants (K >= 1, horizon >= K, probabilities in (0,1])
/// and collects soft warnings (p1 < p2, degenerate theory at p1 = 1,
/// oracle sizes).
ValidationReport validate_config(const SimConfig& cfg, const ChannelParams& ch);

/// Throws std::invalid_argument with the first error if the config is
/// invalid. Simulation entry points call this.
void require_valid(const SimConfig& cfg, const ChannelParams& ch);

}  // namespace aoi

#endif
