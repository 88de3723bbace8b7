#ifndef AOI_ANALYSIS_HPP
#define AOI_ANALYSIS_HPP

#include <cstdint>
#include <utility>

#include "aoi/channel.hpp"
#include "aoi/model.hpp"

namespace aoi {

/// One excursion of the phase-2 Markov chain from state "uncoded" back to
/// "uncoded": z slots, w increments of k2 earned along the way.
struct RenewalPair {
    std::int64_t z = 0;
    std::int64_t w = 0;
};

/// Two second-moment expressions circulate for T1 and Z: the reported
/// closed forms and the ones rederived from the distributions. Monte Carlo
/// sides with the derived variants, so bounds default to them; the reported
/// values stay available for comparison.
enum class MomentVariant { Derived, Reported };

struct TheoryReport {
    int k = 0;
    double p1 = 0.0;
    double p2 = 0.0;
    MomentVariant variant = MomentVariant::Derived;

    /// p1 = 1 makes r = 1: the capped-reward stopping time never terminates
    /// and every bound built on it diverges. Those fields are NaN.
    bool degenerate = false;

    double delta1 = 0.0;  // greedy/adaptive user-1 average age
    double q = 0.0;       // geometric rate in the greedy user-2 lower bound

    double t1_mean = 0.0;
    double t1_sq_reported = 0.0;
    double t1_sq_derived = 0.0;

    double z_mean = 0.0;
    double z_sq_reported = 0.0;
    double z_sq_derived = 0.0;

    double r = 0.0;
    double n1bar_mean = 0.0;
    double n1bar_sq = 0.0;

    double sumz_mean = 0.0;
    double sumz_sq_bound = 0.0;

    double t3_mean_bound = 0.0;
    double t3_sq_bound = 0.0;

    double delta2_upper = 0.0;

    double t1_sq() const {
        return variant == MomentVariant::Derived ? t1_sq_derived : t1_sq_reported;
    }
    double z_sq() const {
        return variant == MomentVariant::Derived ? z_sq_derived : z_sq_reported;
    }
};

/// Evaluates every closed form and bound for one parameter point. Pure
/// arithmetic; never simulates.
TheoryReport theory_report(int k, const ChannelParams& ch,
                           MomentVariant variant = MomentVariant::Derived);

/// Draws one (Z, W) pair by running the phase-2 chain on the given stream.
RenewalPair sample_renewal_pair(const ChannelParams& ch, ErasureStream& stream);

/// Stationary occupancy (pi_uncoded, pi_coded) of the two-state phase-2
/// chain with P(uncoded->coded) = q1*p2 and P(coded->uncoded) = p1.
std::pair<double, double> stationary_distribution(const ChannelParams& ch);

/// Empirical moments of the stopping times N1 (uncapped rewards) and N1bar
/// (capped rewards), of S = sum of Z over the first N1bar pairs, and the
/// dependent-vs-independent-stopping second-moment ratio with its standard
/// error.
struct StoppingTimeStats {
    std::int64_t num_samples = 0;
    double n1_mean = 0.0;
    double n1bar_mean = 0.0;
    double n1bar_sq = 0.0;
    double sumz_mean = 0.0;
    double sumz_sq = 0.0;
    double sumz_sq_independent = 0.0;  // independent copy of the stopping time
    double ratio = 0.0;                // sumz_sq / sumz_sq_independent
    double ratio_se = 0.0;
    std::int64_t capping_violations = 0;  // samples with n1bar < n1 (must stay 0)
};

StoppingTimeStats stopping_time_stats(int k, const ChannelParams& ch,
                                      std::int64_t num_samples, ErasureStream& stream);

}  // namespace aoi

#endif
