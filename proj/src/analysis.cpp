#include "aoi/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace aoi {

namespace {
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
}

TheoryReport theory_report(int k, const ChannelParams& ch, MomentVariant variant) {
    if (k < 1 || !(ch.p1 > 0.0 && ch.p1 <= 1.0) || !(ch.p2 > 0.0 && ch.p2 <= 1.0)) {
        throw std::invalid_argument("theory_report: invalid parameters");
    }
    const double p1 = ch.p1;
    const double p2 = ch.p2;
    const double q1 = ch.q1();
    const double q2 = ch.q2();
    const double kd = static_cast<double>(k);

    TheoryReport rep;
    rep.k = k;
    rep.p1 = p1;
    rep.p2 = p2;
    rep.variant = variant;

    rep.delta1 = (kd / p1) * (1.5 + q1 / kd);
    {
        double root = std::sqrt(q1 * q2);
        rep.q = p1 * p2 / ((1.0 - root) * (1.0 - root));
    }

    rep.t1_mean = kd / p1;
    rep.t1_sq_reported = kd * kd / (p1 * p1) + q1 * kd / p1;
    rep.t1_sq_derived = kd * kd / (p1 * p1) + kd * q1 / (p1 * p1);

    rep.z_mean = 1.0 + q1 * p2 / p1;
    rep.z_sq_reported = 1.0 - p2 + 4.0 * p2 / (p1 * p1);
    rep.z_sq_derived = p1 + q1 * q2 + q1 * p2 * (p1 * p1 + p1 + 2.0) / (p1 * p1);

    rep.t3_mean_bound = kd / p1;
    rep.t3_sq_bound = rep.t1_sq_derived;

    rep.degenerate = p1 >= 1.0;
    if (rep.degenerate) {
        rep.r = 1.0;
        rep.n1bar_mean = kNan;
        rep.n1bar_sq = kNan;
        rep.sumz_mean = kNan;
        rep.sumz_sq_bound = kNan;
        rep.delta2_upper = kNan;
        return rep;
    }

    rep.r = p1 + q1 * q2 + p1 * p2 * q1 * q2 / (1.0 - q1 * q2);
    const double s = 1.0 - rep.r;  // capped-reward success probability
    rep.n1bar_mean = kd / s;
    rep.n1bar_sq = kd * (kd + rep.r) / (s * s);

    rep.sumz_mean = rep.n1bar_mean * rep.z_mean;  // Wald
    rep.sumz_sq_bound = 2.0 * (kd * (kd + 2.0 * rep.r - 1.0) / (s * s) * rep.z_mean * rep.z_mean +
                               rep.n1bar_mean * rep.z_sq());

    const double mean_sum = rep.t1_mean + rep.sumz_mean + rep.t3_mean_bound;
    const double sq_sum = 3.0 * (rep.t1_sq() + rep.sumz_sq_bound + rep.t3_sq_bound);
    rep.delta2_upper = mean_sum + sq_sum / (2.0 * rep.t1_mean);
    return rep;
}

RenewalPair sample_renewal_pair(const ChannelParams& ch, ErasureStream& stream) {
    // One "uncoded" slot; exit immediately unless v = (0,1).
    ErasurePair v = next_pair(stream, ch);
    if (v.v1 == 1 || v.v2 == 0) {
        return RenewalPair{1, 0};
    }
    RenewalPair pair{1, 0};
    // "coded" slots until user 1 receives, collecting k2 increments.
    do {
        v = next_pair(stream, ch);
        ++pair.z;
        pair.w += v.v2;
    } while (v.v1 == 0);
    return pair;
}

std::pair<double, double> stationary_distribution(const ChannelParams& ch) {
    if (!(ch.p1 > 0.0)) {
        throw std::invalid_argument("stationary_distribution: p1 must be positive");
    }
    double to_coded = ch.q1() * ch.p2;
    double denom = ch.p1 + to_coded;
    return {ch.p1 / denom, to_coded / denom};
}

StoppingTimeStats stopping_time_stats(int k, const ChannelParams& ch,
                                      std::int64_t num_samples, ErasureStream& stream) {
    if (ch.p1 >= 1.0 || ch.p2 <= 0.0) {
        throw std::invalid_argument("stopping_time_stats: requires p1 < 1 and p2 > 0");
    }
    StoppingTimeStats stats;
    stats.num_samples = num_samples;

    double sum_n1 = 0.0;
    double sum_nbar = 0.0;
    double sum_nbar_sq = 0.0;
    double sum_s = 0.0;
    double sum_d = 0.0;   // d = S^2
    double sum_e = 0.0;   // e = S'^2 (independent stopping copy)
    double sum_dd = 0.0;
    double sum_ee = 0.0;
    double sum_de = 0.0;

    std::vector<std::int64_t> zs;
    for (std::int64_t n = 0; n < num_samples; ++n) {
        zs.clear();
        std::int64_t cum_w = 0;
        std::int64_t cum_wbar = 0;
        std::int64_t n1 = 0;
        while (cum_wbar < k) {
            RenewalPair pair = sample_renewal_pair(ch, stream);
            zs.push_back(pair.z);
            cum_w += pair.w;
            cum_wbar += std::min<std::int64_t>(pair.w, 1);
            if (n1 == 0 && cum_w >= k) {
                n1 = static_cast<std::int64_t>(zs.size());
            }
        }
        std::int64_t nbar = static_cast<std::int64_t>(zs.size());
        if (n1 == 0 || n1 > nbar) {
            ++stats.capping_violations;
            n1 = nbar;
        }

        double s = 0.0;
        for (std::int64_t z : zs) {
            s += static_cast<double>(z);
        }

        // Independent copy: the stopping index comes from a second, disjoint
        // run of pairs, then indexes the first run's Z sequence.
        std::int64_t cum_wbar2 = 0;
        std::int64_t nbar_indep = 0;
        while (cum_wbar2 < k) {
            RenewalPair pair = sample_renewal_pair(ch, stream);
            cum_wbar2 += std::min<std::int64_t>(pair.w, 1);
            ++nbar_indep;
        }
        while (static_cast<std::int64_t>(zs.size()) < nbar_indep) {
            zs.push_back(sample_renewal_pair(ch, stream).z);
        }
        double s_indep = 0.0;
        for (std::int64_t i = 0; i < nbar_indep; ++i) {
            s_indep += static_cast<double>(zs[static_cast<std::size_t>(i)]);
        }

        sum_n1 += static_cast<double>(n1);
        sum_nbar += static_cast<double>(nbar);
        sum_nbar_sq += static_cast<double>(nbar) * static_cast<double>(nbar);
        sum_s += s;
        double d = s * s;
        double e = s_indep * s_indep;
        sum_d += d;
        sum_e += e;
        sum_dd += d * d;
        sum_ee += e * e;
        sum_de += d * e;
    }

    const double n = static_cast<double>(num_samples);
    stats.n1_mean = sum_n1 / n;
    stats.n1bar_mean = sum_nbar / n;
    stats.n1bar_sq = sum_nbar_sq / n;
    stats.sumz_mean = sum_s / n;
    stats.sumz_sq = sum_d / n;
    stats.sumz_sq_independent = sum_e / n;
    stats.ratio = stats.sumz_sq / stats.sumz_sq_independent;

    // Delta-method standard error of the ratio of means, with covariance.
    double a = stats.sumz_sq;
    double b = stats.sumz_sq_independent;
    double var_d = sum_dd / n - a * a;
    double var_e = sum_ee / n - b * b;
    double cov_de = sum_de / n - a * b;
    double rel_var = var_d / (a * a) + var_e / (b * b) - 2.0 * cov_de / (a * b);
    stats.ratio_se = stats.ratio * std::sqrt(std::max(rel_var, 0.0) / n);
    return stats;
}

}  // namespace aoi
