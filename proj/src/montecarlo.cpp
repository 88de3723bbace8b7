#include "aoi/montecarlo.hpp"

#include <cmath>
#include <future>
#include <limits>
#include <thread>

#include "aoi/adaptive.hpp"
#include "aoi/greedy.hpp"

namespace aoi {

namespace {

struct PathResult {
    double mean1 = 0.0;
    double mean2 = 0.0;
    std::int64_t cycles = 0;
    std::int64_t t1_sum = 0;
    std::int64_t t2_sum = 0;
    std::int64_t t3_sum = 0;
};

PathResult run_path(const SimConfig& cfg, const ChannelParams& ch, std::uint64_t index) {
    PathTrace trace = cfg.scheme == Scheme::Greedy ? simulate_greedy(cfg, ch, index)
                                                   : simulate_adaptive(cfg, ch, index);
    PathResult res;
    res.mean1 = mean_age(trace.ages1);
    res.mean2 = mean_age(trace.ages2);
    res.cycles = static_cast<std::int64_t>(trace.cycles.size());
    for (const CycleRecord& c : trace.cycles) {
        res.t1_sum += c.t1;
        res.t2_sum += c.t2;
        res.t3_sum += c.t3;
    }
    return res;
}

}  // namespace

ExperimentSummary run_experiment(const SimConfig& cfg, const ChannelParams& ch) {
    require_valid(cfg, ch);

    const int n = cfg.num_paths;
    std::vector<PathResult> results(static_cast<std::size_t>(n));

    unsigned workers = std::min<unsigned>(std::thread::hardware_concurrency(),
                                          static_cast<unsigned>(n));
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) {
            results[static_cast<std::size_t>(i)] = run_path(cfg, ch, static_cast<std::uint64_t>(i));
        }
    } else {
        std::vector<std::future<void>> futures;
        futures.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            futures.push_back(std::async(std::launch::async, [&, w] {
                for (int i = static_cast<int>(w); i < n; i += static_cast<int>(workers)) {
                    results[static_cast<std::size_t>(i)] =
                        run_path(cfg, ch, static_cast<std::uint64_t>(i));
                }
            }));
        }
        for (auto& f : futures) {
            f.get();
        }
    }

    ExperimentSummary s;
    s.scheme = cfg.scheme;
    s.k = cfg.k;
    s.p1 = ch.p1;
    s.p2 = ch.p2;
    s.horizon = cfg.horizon;
    s.num_paths = n;
    s.master_seed = cfg.master_seed;

    double sum1 = 0.0, sum2 = 0.0;
    for (const PathResult& r : results) {
        sum1 += r.mean1;
        sum2 += r.mean2;
    }
    s.delta1_hat = sum1 / n;
    s.delta2_hat = sum2 / n;

    double var1 = 0.0, var2 = 0.0;
    if (n > 1) {
        for (const PathResult& r : results) {
            var1 += (r.mean1 - s.delta1_hat) * (r.mean1 - s.delta1_hat);
            var2 += (r.mean2 - s.delta2_hat) * (r.mean2 - s.delta2_hat);
        }
        var1 /= n - 1;
        var2 /= n - 1;
    }
    s.ci1 = 1.96 * std::sqrt(var1 / n);
    s.ci2 = 1.96 * std::sqrt(var2 / n);

    std::int64_t cycles = 0, t1 = 0, t2 = 0, t3 = 0;
    for (const PathResult& r : results) {
        cycles += r.cycles;
        t1 += r.t1_sum;
        t2 += r.t2_sum;
        t3 += r.t3_sum;
    }
    s.cycles_total = cycles;
    if (cfg.scheme == Scheme::Adaptive && cycles > 0) {
        s.t1_mean = static_cast<double>(t1) / static_cast<double>(cycles);
        s.t2_mean = static_cast<double>(t2) / static_cast<double>(cycles);
        s.t3_mean = static_cast<double>(t3) / static_cast<double>(cycles);
    } else {
        s.t1_mean = s.t2_mean = s.t3_mean = std::numeric_limits<double>::quiet_NaN();
    }
    return s;
}

std::vector<ExperimentSummary> sweep_p1(int k, double p2, std::span<const double> p1_values,
                                        const SimConfig& base) {
    std::vector<ExperimentSummary> rows;
    rows.reserve(p1_values.size() * 2);
    for (Scheme scheme : {Scheme::Greedy, Scheme::Adaptive}) {
        for (double p1 : p1_values) {
            SimConfig cfg = base;
            cfg.k = k;
            cfg.scheme = scheme;
            rows.push_back(run_experiment(cfg, ChannelParams{p1, p2}));
        }
    }
    return rows;
}

std::vector<ExperimentSummary> sweep_k(double p1, double p2, std::span<const int> k_values,
                                       const SimConfig& base) {
    std::vector<ExperimentSummary> rows;
    rows.reserve(k_values.size() * 2);
    for (Scheme scheme : {Scheme::Greedy, Scheme::Adaptive}) {
        for (int k : k_values) {
            SimConfig cfg = base;
            cfg.k = k;
            cfg.scheme = scheme;
            rows.push_back(run_experiment(cfg, ChannelParams{p1, p2}));
        }
    }
    return rows;
}

}  // namespace aoi
