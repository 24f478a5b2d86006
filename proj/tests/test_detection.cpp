#include <catch2/catch_amalgamated.hpp>

#include "tqmkit/detection.hpp"
#include "tqmkit/numeric.hpp"

#include <cmath>

using namespace tqmkit;
using Catch::Approx;

namespace {

Gaussian1 coord_gaussian(Axis ax, double sigma_sq, double conj = 1.0) {
    Gaussian1 g;
    g.axis = ax;
    g.rep = Representation::coordinate;
    g.coordinate_center = 0.0;
    g.conjugate_center = conj;
    g.sigma_sq = sigma_sq;
    return g;
}

std::pair<std::vector<double>, std::vector<double>> sample_gaussian(double mean, double var,
                                                                    int n = 801) {
    std::vector<double> t(n), rho(n);
    double sd = std::sqrt(var);
    for (int i = 0; i < n; ++i) {
        t[i] = mean - 8.0 * sd + 16.0 * sd * i / (n - 1);
        rho[i] = std::exp(-(t[i] - mean) * (t[i] - mean) / (2.0 * var));
    }
    return {t, rho};
}

}  // namespace

TEST_CASE("sqm arrival scalings") {
    Gaussian1 gx = coord_gaussian(Axis::x, 4.0, 0.5);
    const double m = 1.0, p0 = 0.5;

    SECTION("doubling L doubles the far-field uncertainty") {
        auto a = sqm_arrival(gx, 100.0, p0, m);
        auto b = sqm_arrival(gx, 200.0, p0, m);
        CHECK(b.sigma_far_field == Approx(2.0 * a.sigma_far_field).epsilon(1e-12));
    }

    SECTION("slower packet spreads more at fixed L") {
        auto fast = sqm_arrival(gx, 50.0, 0.8, m);
        auto slow = sqm_arrival(gx, 50.0, 0.2, m);
        CHECK(slow.dist.variance > fast.dist.variance);
        CHECK(slow.sigma_far_field > fast.sigma_far_field);
    }

    SECTION("far-field formula emerges from the exact variance") {
        auto a = sqm_arrival(gx, 5000.0, p0, m);
        CHECK(std::sqrt(2.0 * a.dist.variance) == Approx(a.sigma_far_field).epsilon(1e-3));
    }

    SECTION("nonrelativistic flag changes the mean") {
        auto rel = sqm_arrival(gx, 50.0, p0, m, true);
        auto nr = sqm_arrival(gx, 50.0, p0, m, false);
        CHECK(rel.dist.mean == Approx(50.0 * on_shell_energy(m, p0, 0, 0) / p0));
        CHECK(nr.dist.mean == Approx(50.0 * m / p0));
    }

    CHECK_THROWS_AS(sqm_arrival(gx, 50.0, 0.0, m), std::invalid_argument);
    CHECK_THROWS_AS(sqm_arrival(gx, 50.0, -0.5, m), std::invalid_argument);
}

TEST_CASE("tqm time part") {
    Gaussian1 gt = coord_gaussian(Axis::time, 1.0);
    const double m = 1.0;

    SECTION("tau_bar = 0 degenerates to the initial width") {
        auto d = tqm_time_part(gt, 0.0, m);
        CHECK(d.dist.variance == Approx(0.5 * 1.0));
    }

    SECTION("halving sigma_t doubles the far-field dispersion") {
        Gaussian1 half = gt;
        half.sigma_sq = 0.25;  // sigma_t = 0.5
        auto a = tqm_time_part(gt, 1000.0, m);
        auto b = tqm_time_part(half, 1000.0, m);
        CHECK(b.sigma_far_field == Approx(2.0 * a.sigma_far_field).epsilon(1e-12));
    }

    SECTION("matches the GTF time density") {
        for (double tau : {0.5, 3.0, 40.0}) {
            auto d = tqm_time_part(gt, tau, m);
            auto ref = time_density(gt, tau, m, m);
            CHECK(d.dist.variance == Approx(ref.variance).epsilon(1e-12));
        }
    }

    Gaussian1 degenerate = gt;
    degenerate.sigma_sq = 0.0;
    CHECK_THROWS_AS(tqm_time_part(degenerate, 1.0, m), std::domain_error);
}

TEST_CASE("total arrival variance is the Pythagorean sum") {
    auto s = ArrivalDistribution::gaussian(ArrivalKind::sqm, 20.0, 9.0);
    auto t = ArrivalDistribution::gaussian(ArrivalKind::tqm_time_part, 20.0, 16.0);

    SECTION("analytic Gaussian pair: 3-4-5") {
        auto total = total_arrival(s, t);
        CHECK(total.variance == Approx(25.0).epsilon(1e-12));
        CHECK(total.mean == Approx(20.0));
        // density integrates to one and carries that variance
        double w = 0, m2 = 0;
        int n = 4001;
        for (int i = 0; i < n; ++i) {
            double x = 20.0 - 40.0 + 80.0 * i / (n - 1.0);
            double dx = 80.0 / (n - 1.0);
            w += total.density(x) * dx;
            m2 += total.density(x) * (x - 20.0) * (x - 20.0) * dx;
        }
        CHECK(w == Approx(1.0).epsilon(1e-9));
        CHECK(m2 == Approx(25.0).epsilon(1e-9));
    }

    SECTION("commutativity") {
        auto ab = total_arrival(s, t);
        auto ba = total_arrival(t, s);
        CHECK(ab.variance == Approx(ba.variance));
        CHECK(ab.mean == Approx(ba.mean));
    }

    SECTION("vanishing TQM part is the identity on the SQM distribution") {
        auto eps = ArrivalDistribution::gaussian(ArrivalKind::tqm_time_part, 20.0, 1e-16);
        auto total = total_arrival(s, eps);
        CHECK(total.variance == Approx(9.0).epsilon(1e-12));
    }

    SECTION("sampled path reproduces additivity to 1e-3") {
        auto [ts, rs] = sample_gaussian(20.0, 9.0);
        auto [tt, rt] = sample_gaussian(20.0, 16.0);
        auto ss = ArrivalDistribution::from_samples(ArrivalKind::sqm, ts, rs);
        auto st = ArrivalDistribution::from_samples(ArrivalKind::tqm_time_part, tt, rt);
        auto total = total_arrival(ss, st);
        CHECK(total.variance == Approx(25.0).epsilon(1e-3));
        CHECK(total.mean == Approx(20.0).margin(1e-6));
    }

    SECTION("kind mismatch rejected") {
        CHECK_THROWS_AS(total_arrival(s, s), std::invalid_argument);
    }
}

TEST_CASE("tqm signal") {
    CHECK(tqm_signal(9.0, 9.0) == 0.0);
    CHECK(tqm_signal(25.0, 9.0) == Approx(16.0));
    CHECK_THROWS_AS(tqm_signal(8.0, 9.0), std::domain_error);

    SECTION("independent jitter cancels in the difference") {
        double total = 25.0, sqm = 9.0;
        for (double jitter : {0.5, 2.0, 10.0}) {
            CHECK(tqm_signal(total + jitter, sqm + jitter) ==
                  Approx(tqm_signal(total, sqm)).epsilon(1e-12));
        }
    }

    SECTION("slow train: signal buried for slow packets with sigma_x ~ sigma_t") {
        const double m = 1.0, v0 = 0.01;
        Gaussian1 gx = coord_gaussian(Axis::x, 1.0, m * v0);
        Gaussian1 gt = coord_gaussian(Axis::time, 1.0);
        auto s = sqm_arrival(gx, 50.0, m * v0, m, false);
        auto t = tqm_time_part(gt, s.dist.mean, m);
        auto total = total_arrival(s.dist, t.dist);
        double signal = tqm_signal(total.variance, s.dist.variance);
        CHECK(signal / total.variance < 1e-3);
    }
}
