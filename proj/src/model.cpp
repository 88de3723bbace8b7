#include "aoi/model.hpp"

#include <limits>
#include <stdexcept>

namespace aoi {

const char* to_string(Scheme s) {
    return s == Scheme::Greedy ? "greedy" : "adaptive";
}

double mean_age(std::span<const std::uint32_t> trace_ages) {
    if (trace_ages.empty()) {
        throw std::invalid_argument("empty trace");
    }
    double sum = 0.0;
    for (std::uint32_t a : trace_ages) {
        sum += static_cast<double>(a);
    }
    return sum / static_cast<double>(trace_ages.size());
}

ValidationReport validate_config(const SimConfig& cfg, const ChannelParams& ch) {
    ValidationReport report;

    if (cfg.k < 1) {
        report.errors.push_back("K < 1");
    }
    if (cfg.horizon < cfg.k) {
        report.errors.push_back("horizon < K");
    }
    if (cfg.num_paths < 1) {
        report.errors.push_back("paths < 1");
    }
    // Ages are stored as 32-bit integers.
    if (cfg.horizon > static_cast<std::int64_t>(std::numeric_limits<std::uint32_t>::max())) {
        report.errors.push_back("horizon exceeds 2^32-1 slots");
    }
    if (!(ch.p1 > 0.0 && ch.p1 <= 1.0)) {
        report.errors.push_back("p1 outside (0,1]");
    }
    if (!(ch.p2 > 0.0 && ch.p2 <= 1.0)) {
        report.errors.push_back("p2 outside (0,1]");
    }

    if (report.ok()) {
        if (ch.p1 < ch.p2) {
            report.warnings.push_back("p1 < p2 (user 1 is assumed to be the strong user)");
        }
        if (ch.p1 == 1.0) {
            report.warnings.push_back("p1 = 1: theory bounds degenerate");
        }
        if (cfg.oracle_mode && cfg.k > 16) {
            report.warnings.push_back("oracle verification recommended for K <= 16");
        }
    }
    return report;
}

void require_valid(const SimConfig& cfg, const ChannelParams& ch) {
    ValidationReport report = validate_config(cfg, ch);
    if (!report.ok()) {
        throw std::invalid_argument("invalid config: " + report.errors.front());
    }
}

}  // namespace aoi
