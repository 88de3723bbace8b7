#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "aoi/analysis.hpp"
#include "aoi/channel.hpp"

using namespace aoi;

TEST_CASE("theory_report closed forms at pinned points") {
    SUBCASE("delta1 at (K=10, p1=0.5)") {
        TheoryReport rep = theory_report(10, ChannelParams{0.5, 0.2});
        CHECK(rep.delta1 == doctest::Approx(31.0));
        CHECK(rep.t1_mean == doctest::Approx(20.0));
        CHECK(rep.t1_sq_reported == doctest::Approx(410.0));
        CHECK(rep.t1_sq_derived == doctest::Approx(420.0));
    }
    SUBCASE("rates and moments at (0.7, 0.4)") {
        TheoryReport rep = theory_report(10, ChannelParams{0.7, 0.4});
        CHECK(rep.q == doctest::Approx(0.844718).epsilon(1e-4));
        CHECK(rep.r == doctest::Approx(0.9414634).epsilon(1e-6));
        CHECK(rep.n1bar_mean == doctest::Approx(170.8333).epsilon(1e-5));
        CHECK(rep.z_mean == doctest::Approx(1.1714286).epsilon(1e-6));
        CHECK(rep.z_sq_derived == doctest::Approx(1.661224).epsilon(1e-5));
        CHECK(rep.z_sq_reported == doctest::Approx(3.865306).epsilon(1e-5));
        CHECK(rep.sumz_mean == doctest::Approx(rep.n1bar_mean * rep.z_mean));
        CHECK_FALSE(rep.degenerate);
        CHECK(rep.delta2_upper > rep.t1_mean + rep.sumz_mean + rep.t3_mean_bound);
    }
    SUBCASE("q boundary at p1 = p2 = 1") {
        TheoryReport rep = theory_report(10, ChannelParams{1.0, 1.0});
        CHECK(rep.q == doctest::Approx(1.0));
    }
    SUBCASE("degenerate marker at p1 = 1") {
        TheoryReport rep = theory_report(10, ChannelParams{1.0, 0.4});
        CHECK(rep.degenerate);
        CHECK(std::isnan(rep.n1bar_mean));
        CHECK(std::isnan(rep.sumz_mean));
        CHECK(std::isnan(rep.delta2_upper));
        CHECK(rep.delta1 == doctest::Approx(15.0));  // still well defined
    }
}

TEST_CASE("theory_report is sane over a parameter grid") {
    for (double p1 = 0.1; p1 < 0.95; p1 += 0.1) {
        for (double p2 = 0.1; p2 < 0.95; p2 += 0.1) {
            TheoryReport rep = theory_report(10, ChannelParams{p1, p2});
            // q = 1 exactly on the diagonal p1 = p2 (AM-GM); below it under
            // the standing strong/weak ordering p1 > p2.
            if (p1 > p2 + 1e-9) {
                CHECK(rep.q < 1.0);
            } else if (std::abs(p1 - p2) < 1e-9) {
                CHECK(rep.q == doctest::Approx(1.0));
            }
            CHECK(rep.r < 1.0);
            // n1bar second moment must describe a valid distribution.
            CHECK(rep.n1bar_sq - rep.n1bar_mean * rep.n1bar_mean >= 0.0);
        }
    }
}

TEST_CASE("sample_renewal_pair matches the derived moments") {
    SUBCASE("p1 = 1 collapses to (1,0)") {
        ErasureStream stream = derive_stream(3, 0);
        ChannelParams ch{1.0, 0.9};
        for (int i = 0; i < 1000; ++i) {
            RenewalPair pair = sample_renewal_pair(ch, stream);
            REQUIRE(pair.z == 1);
            REQUIRE(pair.w == 0);
        }
    }
    SUBCASE("moments at (0.7, 0.4) side with the derived second moment") {
        ChannelParams ch{0.7, 0.4};
        TheoryReport rep = theory_report(10, ch);
        ErasureStream stream = derive_stream(101, 0);
        const int n = 1000000;
        double sum_z = 0, sum_z2 = 0;
        for (int i = 0; i < n; ++i) {
            RenewalPair pair = sample_renewal_pair(ch, stream);
            REQUIRE(pair.w <= pair.z - 1);  // rewards only in coded slots
            sum_z += static_cast<double>(pair.z);
            sum_z2 += static_cast<double>(pair.z) * static_cast<double>(pair.z);
        }
        double z_mean = sum_z / n;
        double z_sq = sum_z2 / n;
        CHECK(std::abs(z_mean - rep.z_mean) / rep.z_mean < 0.005);
        CHECK(std::abs(z_sq - rep.z_sq_derived) / rep.z_sq_derived < 0.02);
        // The reported second moment is not what the chain produces.
        CHECK(std::abs(z_sq - rep.z_sq_reported) / rep.z_sq_reported > 0.5);

        double var = z_sq - z_mean * z_mean;
        double var_theory = rep.z_sq_derived - rep.z_mean * rep.z_mean;
        CHECK(std::abs(var - var_theory) / var_theory < 0.02);
    }
}

TEST_CASE("stationary distribution of the phase-2 chain") {
    SUBCASE("closed form") {
        auto [u, c] = stationary_distribution(ChannelParams{0.7, 0.4});
        CHECK(u == doctest::Approx(0.8536585).epsilon(1e-6));
        CHECK(c == doctest::Approx(0.1463415).epsilon(1e-6));

        auto [u1, c1] = stationary_distribution(ChannelParams{1.0, 0.4});
        CHECK(u1 == doctest::Approx(1.0));
        CHECK(c1 == doctest::Approx(0.0));
    }
    SUBCASE("empirical occupancy over a long chain run") {
        ChannelParams ch{0.7, 0.4};
        auto [pi_u, pi_c] = stationary_distribution(ch);
        ErasureStream stream = derive_stream(404, 0);
        const int n = 1000000;
        long in_uncoded = 0;
        bool coded = false;
        for (int i = 0; i < n; ++i) {
            in_uncoded += coded ? 0 : 1;
            ErasurePair v = next_pair(stream, ch);
            coded = coded ? (v.v1 == 0) : (v.v1 == 0 && v.v2 == 1);
        }
        double emp_u = static_cast<double>(in_uncoded) / n;
        CHECK(std::abs(emp_u - pi_u) / pi_u < 0.01);
        CHECK(std::abs((1.0 - emp_u) - pi_c) / pi_c < 0.01);
    }
}

TEST_CASE("stopping-time statistics at (0.7, 0.4), K = 10") {
    ChannelParams ch{0.7, 0.4};
    TheoryReport rep = theory_report(10, ch);
    ErasureStream stream = derive_stream(777, 0);
    StoppingTimeStats stats = stopping_time_stats(10, ch, 30000, stream);

    CHECK(stats.capping_violations == 0);  // n1bar >= n1 on every path
    CHECK(stats.n1_mean <= stats.n1bar_mean);
    CHECK(std::abs(stats.n1bar_mean - rep.n1bar_mean) / rep.n1bar_mean < 0.02);
    CHECK(std::abs(stats.sumz_mean - rep.sumz_mean) / rep.sumz_mean < 0.02);  // Wald
    CHECK(stats.sumz_sq <= rep.sumz_sq_bound);
    CHECK(stats.ratio <= 2.0 + 3.0 * stats.ratio_se);
    CHECK(stats.ratio_se < 0.1);
}

TEST_CASE("stopping-time preconditions") {
    ErasureStream stream = derive_stream(1, 0);
    ChannelParams degenerate{1.0, 0.4};
    CHECK_THROWS_AS(stopping_time_stats(10, degenerate, 10, stream),
                    std::invalid_argument);
}
