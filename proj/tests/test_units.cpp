#include <catch2/catch_amalgamated.hpp>

#include "tqmkit/numeric.hpp"
#include "tqmkit/units.hpp"

#include <cmath>
#include <random>

using namespace tqmkit;
using Catch::Approx;

TEST_CASE("minkowski_dot basic identities") {
    FourMomentum rest{1, 0, 0, 0};
    CHECK(minkowski_dot(rest, rest) == Approx(1.0));

    FourMomentum sx{0, 1, 0, 0};
    CHECK(minkowski_dot(sx, sx) == Approx(-1.0));

    FourMomentum null{3, 1, 2, 2};
    CHECK(minkowski_dot(null, null) == Approx(0.0).margin(1e-12));
}

TEST_CASE("minkowski_dot is bilinear and symmetric") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (int trial = 0; trial < 200; ++trial) {
        FourMomentum p{u(rng), u(rng), u(rng), u(rng)};
        FourMomentum q{u(rng), u(rng), u(rng), u(rng)};
        FourMomentum r{u(rng), u(rng), u(rng), u(rng)};
        double a = u(rng), b = u(rng);
        CHECK(minkowski_dot(p, q) == Approx(minkowski_dot(q, p)).epsilon(1e-12));
        double lhs = minkowski_dot(p * a + q * b, r);
        double rhs = a * minkowski_dot(p, r) + b * minkowski_dot(q, r);
        CHECK(lhs == Approx(rhs).epsilon(1e-10).margin(1e-10));
    }
}

TEST_CASE("on_shell_energy") {
    CHECK(on_shell_energy(1.0, 0, 0, 0) == Approx(1.0));
    CHECK(on_shell_energy(0.0, 3, 4, 0) == Approx(5.0));
    CHECK(on_shell_energy(0.511e6, 0.511e6, 0, 0) == Approx(0.511e6 * std::sqrt(2.0)));
    CHECK_THROWS_AS(on_shell_energy(-1.0, 0, 0, 0), std::invalid_argument);

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int trial = 0; trial < 100; ++trial) {
        double m = std::abs(u(rng));
        CHECK(on_shell_energy(m, u(rng), u(rng), u(rng)) >= m);
    }
}

TEST_CASE("time_energy_convert") {
    // 1 eV^-1 = 658.2119569 as
    CHECK(time_energy_convert(1.0, TimeUnit::inverse_ev) == Approx(658.2119569).epsilon(1e-9));

    // exact round trips
    for (double x : {1e-3, 1.0, 17.5, 1e6}) {
        double there = time_energy_convert(x, TimeUnit::inverse_ev);
        CHECK(time_energy_convert(there, TimeUnit::attoseconds) == Approx(x).epsilon(1e-12));
    }

    // Bohr-radius crossing time a0/c ~ 0.177 as
    const double a0_m = 5.29177210903e-11;
    const double c_ms = 2.99792458e8;
    double crossing_as = a0_m / c_ms / 1e-18;
    CHECK(crossing_as == Approx(0.177).epsilon(0.005));
    // and its 1/eV expression converts back consistently
    double inv_ev = time_energy_convert(crossing_as, TimeUnit::attoseconds);
    CHECK(time_energy_convert(inv_ev, TimeUnit::inverse_ev) == Approx(crossing_as).epsilon(1e-12));
}

TEST_CASE("tolerances validate") {
    Tolerances t;
    CHECK_NOTHROW(t.validate());
    t.rel_tol = 0.0;
    CHECK_THROWS_AS(t.validate(), std::invalid_argument);
}

TEST_CASE("quadrature rules integrate polynomials exactly") {
    auto gh = gauss_hermite(32);
    // int e^{-x^2} x^4 dx = 3 sqrt(pi) / 4
    double acc = 0.0;
    for (size_t i = 0; i < gh.nodes.size(); ++i)
        acc += gh.weights[i] * std::pow(gh.nodes[i], 4);
    CHECK(acc == Approx(0.75 * std::sqrt(M_PI)).epsilon(1e-12));

    auto gl = gauss_legendre(16, 0.0, 2.0);
    acc = 0.0;
    for (size_t i = 0; i < gl.nodes.size(); ++i)
        acc += gl.weights[i] * (gl.nodes[i] * gl.nodes[i] * gl.nodes[i]);
    CHECK(acc == Approx(4.0).epsilon(1e-12));
}

TEST_CASE("tail statistics against known values") {
    CHECK(normal_sf(5.0) == Approx(2.866515719235352e-7).epsilon(1e-9));
    CHECK(normal_upper_quantile(2.866515719235352e-7) == Approx(5.0).epsilon(1e-9));
    // chi2(1) upper quantile at 0.05 is 3.841458820694124
    CHECK(chi2_upper_quantile(0.05, 1.0) == Approx(3.841458820694124).epsilon(1e-9));
    // chi2(10): P(X > 18.307038) = 0.05
    CHECK(chi2_sf(18.30703805327515, 10.0) == Approx(0.05).epsilon(1e-9));
    // quantile/sf round trip in the far tail
    double q = chi2_upper_quantile(2.9e-7, 100.0);
    CHECK(chi2_sf(q, 100.0) == Approx(2.9e-7).epsilon(1e-6));
}

TEST_CASE("rng determinism") {
    Rng a(123456), b(123456);
    for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
    // normals have roughly unit variance
    Rng c(99);
    double s = 0, s2 = 0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        double x = c.normal();
        s += x;
        s2 += x * x;
    }
    CHECK(s / n == Approx(0.0).margin(0.01));
    CHECK(s2 / n == Approx(1.0).epsilon(0.02));
}
