#ifndef AOI_MONTECARLO_HPP
#define AOI_MONTECARLO_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "aoi/model.hpp"

namespace aoi {

/// Aggregate of num_paths independent sample paths at one parameter point.
/// Hats are sample means of per-path time-average ages; ci* are 95% normal
/// confidence half-widths across paths. Cycle stats are NaN for the greedy
/// scheme (no cycle decomposition there).
struct ExperimentSummary {
    Scheme scheme = Scheme::Greedy;
    int k = 0;
    double p1 = 0.0;
    double p2 = 0.0;
    std::int64_t horizon = 0;
    int num_paths = 0;
    std::uint64_t master_seed = 0;

    double delta1_hat = 0.0;
    double ci1 = 0.0;
    double delta2_hat = 0.0;
    double ci2 = 0.0;

    double t1_mean = 0.0;
    double t2_mean = 0.0;
    double t3_mean = 0.0;
    std::int64_t cycles_total = 0;
};

/// Runs cfg.num_paths independent paths (streams derived from
/// (master_seed, path_index)) and aggregates. Deterministic for fixed
/// (cfg, ch) regardless of worker scheduling: per-path results are pure
/// functions of the path index and are combined in index order.
ExperimentSummary run_experiment(const SimConfig& cfg, const ChannelParams& ch);

/// One summary per (scheme, p1) pair; rows ordered scheme-major
/// (greedy first), grid-value minor.
std::vector<ExperimentSummary> sweep_p1(int k, double p2, std::span<const double> p1_values,
                                        const SimConfig& base);

/// One summary per (scheme, K) pair; same ordering contract.
std::vector<ExperimentSummary> sweep_k(double p1, double p2, std::span<const int> k_values,
                                       const SimConfig& base);

}  // namespace aoi

#endif
