#include <catch2/catch_amalgamated.hpp>

#include "tqmkit/merit.hpp"

#include <cmath>

using namespace tqmkit;
using Catch::Approx;

TEST_CASE("required samples from the normal approximation") {
    MeritInputs in;
    in.sigma_sqm = 1.0;
    in.sigma_tqm_total = 2.0;  // r = 4
    in.sigmas = 5.0;
    CHECK(required_samples(in) == 6);  // ceil(2*25/9)

    SECTION("divergence as r -> 1+") {
        for (double ratio : {1.5, 1.1, 1.01}) {
            in.sigma_tqm_total = std::sqrt(ratio);
            double r = in.variance_ratio();
            long n = required_samples(in);
            CHECK(n == static_cast<long>(std::ceil(2.0 * 25.0 / ((r - 1.0) * (r - 1.0)))));
        }
        in.sigma_tqm_total = 1.0;  // r = 1
        CHECK_THROWS_AS(required_samples(in), std::domain_error);
    }

    SECTION("scales with sigmas^2") {
        in.sigma_tqm_total = 1.5;
        in.sigmas = 5.0;
        long n5 = required_samples(in);
        in.sigmas = 10.0;
        long n10 = required_samples(in);
        CHECK(n10 == Approx(4.0 * n5).margin(1.0));
    }
}

TEST_CASE("figure of merit") {
    auto r = figure_of_merit(100000, 1.0);
    CHECK(std::abs(r.M - 5.0) < 1e-12);
    CHECK(figure_of_merit(10, 10.0).M == Approx(0.0).margin(1e-12));
    CHECK(figure_of_merit(1, 1000.0).M == Approx(-3.0).margin(1e-12));
    CHECK_THROWS_AS(figure_of_merit(0, 1.0), std::invalid_argument);

    SECTION("report invariant M = log10(N/T)") {
        auto x = figure_of_merit(1234, 3.7);
        CHECK(x.M == Approx(std::log10(1234.0 / 3.7)).margin(1e-12));
    }

    SECTION("monotone in rate and sigmas") {
        MeritInputs in;
        in.sigma_tqm_total = 1.5;
        long n1 = required_samples(in);
        CHECK(figure_of_merit(n1, 10.0).M < figure_of_merit(n1, 1.0).M);
        in.sigmas = 7.0;
        CHECK(required_samples(in) >= n1);
    }
}

TEST_CASE("monte carlo power oracle") {
    MeritInputs in;
    in.sigma_sqm = 1.0;

    SECTION("huge separation needs only a handful of samples") {
        in.sigma_tqm_total = std::sqrt(10.0);  // r = 10
        long n = mc_power_oracle(in, 20000, 42);
        CHECK(n <= 5);
    }

    SECTION("seed stability") {
        in.sigma_tqm_total = 1.6;
        long a = mc_power_oracle(in, 10000, 7);
        long b = mc_power_oracle(in, 10000, 7);
        CHECK(a == b);
    }

    SECTION("agreement with the analytic estimate within a factor 2") {
        for (double r : {1.5, 2.0, 4.0}) {
            in.sigma_tqm_total = std::sqrt(r);
            long analytic = required_samples(in);
            long mc = mc_power_oracle(in, 20000, 99);
            double ratio = static_cast<double>(mc) / analytic;
            INFO("r=" << r << " analytic=" << analytic << " mc=" << mc);
            CHECK(ratio <= 2.0);
            CHECK(ratio >= 0.5);
        }
    }

    SECTION("trial floor enforced") {
        in.sigma_tqm_total = 2.0;
        CHECK_THROWS_AS(mc_power_oracle(in, 100, 1), std::invalid_argument);
    }
}
