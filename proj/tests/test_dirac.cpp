#include <catch2/catch_amalgamated.hpp>

#include "tqmkit/dirac.hpp"

#include <cmath>
#include <random>

using namespace tqmkit;
using Catch::Approx;

namespace {

double matrix_max_abs_diff(const SpinorMatrix& a, const SpinorMatrix& b) {
    double m = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m = std::max(m, std::abs(a[i][j] - b[i][j]));
    return m;
}

SpinorMatrix identity_times(cdouble s) {
    SpinorMatrix r{};
    for (int i = 0; i < 4; ++i) r[i][i] = s;
    return r;
}

SpinorMatrix outer(const Spinor& ket, const Spinor& bar) {
    SpinorMatrix r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i][j] = ket[i] * bar[j];
    return r;
}

}  // namespace

TEST_CASE("gamma matrix algebra") {
    const auto& g = spinor_basis().gamma;
    const double gdiag[4] = {1.0, -1.0, -1.0, -1.0};

    CHECK(matrix_max_abs_diff(g[0] * g[0], identity_times(1.0)) < 1e-15);

    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
            SpinorMatrix anti = g[mu] * g[nu] + g[nu] * g[mu];
            SpinorMatrix expect = identity_times(mu == nu ? 2.0 * gdiag[mu] : 0.0);
            CHECK(matrix_max_abs_diff(anti, expect) < 1e-12);
        }
}

TEST_CASE("slash squared is the invariant") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int i = 0; i < 50; ++i) {
        FourMomentum p{u(rng) + 3.0, u(rng), u(rng), u(rng)};
        SpinorMatrix ps = spinor_basis().slash(p);
        double p2 = minkowski_norm2(p);
        CHECK(matrix_max_abs_diff(ps * ps, identity_times(p2)) < 1e-11);
        // (pslash - m)(pslash + m) = (p^2 - m^2) I
        double m = 0.7;
        SpinorMatrix minus = ps, plus = ps;
        for (int d = 0; d < 4; ++d) {
            minus[d][d] -= m;
            plus[d][d] += m;
        }
        CHECK(matrix_max_abs_diff(minus * plus, identity_times(p2 - m * m)) < 1e-11);
    }
}

TEST_CASE("rest-frame spinors") {
    const double m = 1.0;
    FourMomentum rest{m, 0, 0, 0};
    Spinor u1 = dirac_u(rest, 1, m);
    CHECK(std::abs(u1[0] - 1.0) < 1e-15);
    CHECK(std::abs(u1[1]) < 1e-15);
    CHECK(std::abs(u1[2]) < 1e-15);
    CHECK(std::abs(u1[3]) < 1e-15);

    for (int s : {1, 2}) {
        Spinor us = dirac_u(rest, s, m);
        CHECK(std::abs(spinor_dot(dirac_adjoint(us), us) - 1.0) < 1e-14);
        Spinor vs = dirac_v(rest, s, m);
        CHECK(std::abs(spinor_dot(dirac_adjoint(vs), vs) + 1.0) < 1e-14);
    }

    CHECK_THROWS_AS(dirac_u(FourMomentum{-2.0, 0, 0, 0}, 1, 1.0), std::domain_error);
    CHECK_THROWS_AS(dirac_u(rest, 3, m), std::invalid_argument);
}

TEST_CASE("spinor normalization ubar u = 1 on shell") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    const double m = 0.9;
    for (int i = 0; i < 30; ++i) {
        FourMomentum p = make_on_shell(m, u(rng), u(rng), u(rng));
        for (int s : {1, 2}) {
            Spinor us = dirac_u(p, s, m);
            CHECK(std::abs(spinor_dot(dirac_adjoint(us), us) - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("spinor completeness at random on-shell momenta") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    const double m = 1.0;
    for (int i = 0; i < 100; ++i) {
        FourMomentum p = make_on_shell(m, u(rng), u(rng), u(rng));
        SpinorMatrix ps = spinor_basis().slash(p);

        SpinorMatrix usum{};
        SpinorMatrix vsum{};
        for (int s : {1, 2}) {
            Spinor us = dirac_u(p, s, m);
            Spinor vs = dirac_v(p, s, m);
            usum = usum + outer(us, dirac_adjoint(us));
            vsum = vsum + outer(vs, dirac_adjoint(vs));
        }
        SpinorMatrix uexpect = ps, vexpect = ps;
        for (int d = 0; d < 4; ++d) {
            uexpect[d][d] += m;
            vexpect[d][d] -= m;
        }
        uexpect = cdouble(1.0 / (2.0 * m), 0.0) * uexpect;
        vexpect = cdouble(1.0 / (2.0 * m), 0.0) * vexpect;
        CHECK(matrix_max_abs_diff(usum, uexpect) < 1e-11);
        CHECK(matrix_max_abs_diff(vsum, vexpect) < 1e-11);
    }
}

TEST_CASE("TQM fermion propagator") {
    FourMomentum p{1.4, 0.5, -0.2, 0.3};
    const double m = 1.0, eps = 1e-6;

    SECTION("factorizes as scalar times (pslash + m)") {
        double omega = 0.2;
        SpinorMatrix sprop = dirac_tqm_propagator(omega, p, m, eps);
        auto scalar = spin0_tqm_packed(omega, p, m, eps);
        SpinorMatrix numer = spinor_basis().slash(p);
        for (int d = 0; d < 4; ++d) numer[d][d] += m;
        SpinorMatrix expect = scalar.value * numer;
        CHECK(matrix_max_abs_diff(sprop, expect) < 1e-13);
    }

    SECTION("attosecond limit") {
        SpinorMatrix atto = dirac_attosecond(p, m);
        double d = p.E * p.E - p.p_squared3() - m * m;
        SpinorMatrix numer = spinor_basis().slash(p);
        for (int k = 0; k < 4; ++k) numer[k][k] += m;
        SpinorMatrix expect = (iu / d) * numer;
        CHECK(matrix_max_abs_diff(atto, expect) < 1e-13);
        // packed at omega=0, eps->0 carries the documented factor 2
        SpinorMatrix packed = dirac_tqm_propagator(0.0, p, m, 1e-12);
        SpinorMatrix twice = cdouble(2.0, 0.0) * atto;
        CHECK(matrix_max_abs_diff(packed, twice) < 1e-5);
    }

    SECTION("E = 0 rejected") {
        FourMomentum bad{0.0, 1.0, 0, 0};
        CHECK_THROWS_AS(dirac_tqm_propagator(0.1, bad, m, eps), std::domain_error);
    }
}

TEST_CASE("vertex factor") {
    const double m = 1.0, e = 0.3;
    FourMomentum rest{m, 0, 0, 0};
    Spinor u1 = dirac_u(rest, 1, m);
    Spinor u2 = dirac_u(rest, 2, m);

    // rest frame: ubar1 gamma^0 u1 = 1 so the vertex is -ie
    cdouble v = vertex_factor(dirac_adjoint(u1), 0, u1, e);
    CHECK(std::abs(v - (-iu * e)) < 1e-14);

    // ubar1 gamma^3 u2 vanishes at rest
    cdouble z = vertex_factor(dirac_adjoint(u1), 3, u2, e);
    CHECK(std::abs(z) < 1e-14);
}

TEST_CASE("current conservation at the vertex") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const double m = 1.0;
    const double gdiag[4] = {1.0, -1.0, -1.0, -1.0};
    for (int i = 0; i < 40; ++i) {
        FourMomentum p = make_on_shell(m, u(rng), u(rng), u(rng));
        FourMomentum q = make_on_shell(m, u(rng), u(rng), u(rng));
        for (int s : {1, 2})
            for (int t : {1, 2}) {
                Spinor ubar = dirac_adjoint(dirac_u(q, s, m));
                Spinor uin = dirac_u(p, t, m);
                FourMomentum dq = q - p;
                const double comp[4] = {dq.E, dq.px, dq.py, dq.pz};
                cdouble contracted = 0.0;
                for (int mu = 0; mu < 4; ++mu)
                    contracted += gdiag[mu] * comp[mu] *
                                  spinor_bracket(ubar, spinor_basis().gamma[mu], uin);
                CHECK(std::abs(contracted) < 1e-12);
            }
    }
}
