#pragma once

// Dirac-representation gamma matrices, u/v spinors with the coordinate
// energy E in place of E_p (the 4D promotion), the fermion propagator, and
// the QED vertex factor.

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "tqmkit/propagators.hpp"
#include "tqmkit/units.hpp"

namespace tqmkit {

using Spinor = std::array<cdouble, 4>;
using SpinorMatrix = std::array<std::array<cdouble, 4>, 4>;

inline SpinorMatrix spinor_zero() { return SpinorMatrix{}; }

inline SpinorMatrix operator+(const SpinorMatrix& a, const SpinorMatrix& b) {
    SpinorMatrix r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i][j] = a[i][j] + b[i][j];
    return r;
}

inline SpinorMatrix operator*(const SpinorMatrix& a, const SpinorMatrix& b) {
    SpinorMatrix r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            cdouble s = 0.0;
            for (int k = 0; k < 4; ++k) s += a[i][k] * b[k][j];
            r[i][j] = s;
        }
    return r;
}

inline SpinorMatrix operator*(cdouble s, const SpinorMatrix& a) {
    SpinorMatrix r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i][j] = s * a[i][j];
    return r;
}

inline Spinor operator*(const SpinorMatrix& a, const Spinor& v) {
    Spinor r{};
    for (int i = 0; i < 4; ++i) {
        cdouble s = 0.0;
        for (int k = 0; k < 4; ++k) s += a[i][k] * v[k];
        r[i] = s;
    }
    return r;
}

/// Gamma matrices in the Dirac representation plus spinor constructors.
struct SpinorBasis {
    std::array<SpinorMatrix, 4> gamma;

    SpinorBasis() {
        // gamma^0 = diag(I, -I); gamma^i = [[0, sigma_i], [-sigma_i, 0]]
        SpinorMatrix g0{}, g1{}, g2{}, g3{};
        g0[0][0] = 1; g0[1][1] = 1; g0[2][2] = -1; g0[3][3] = -1;
        g1[0][3] = 1; g1[1][2] = 1; g1[2][1] = -1; g1[3][0] = -1;
        g2[0][3] = -iu; g2[1][2] = iu; g2[2][1] = iu; g2[3][0] = -iu;
        g3[0][2] = 1; g3[1][3] = -1; g3[2][0] = -1; g3[3][1] = 1;
        gamma = {g0, g1, g2, g3};
    }

    /// Feynman slash p_mu gamma^mu = E gamma^0 - p . gamma-vec.
    SpinorMatrix slash(const FourMomentum& p) const {
        SpinorMatrix r{};
        const double comp[4] = {p.E, p.px, p.py, p.pz};
        const double gsign[4] = {1.0, -1.0, -1.0, -1.0};
        for (int mu = 0; mu < 4; ++mu)
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) r[i][j] += gsign[mu] * comp[mu] * gamma[mu][i][j];
        return r;
    }
};

inline const SpinorBasis& spinor_basis() {
    static const SpinorBasis b{};
    return b;
}

/// Positive-frequency spinor u_s(p), s in {1, 2}, normalization
/// sqrt((E + m) / 2m) with the supplied coordinate energy E.
inline Spinor dirac_u(const FourMomentum& p, int s, double m) {
    if (!(p.E + m > 0.0)) throw std::domain_error("dirac_u: E + m must be positive");
    if (s != 1 && s != 2) throw std::invalid_argument("dirac_u: spin index must be 1 or 2");
    const double denom = p.E + m;
    const double norm = std::sqrt(denom / (2.0 * m));
    const cdouble pp(p.px, p.py);   // p1 + i p2
    const cdouble pm(p.px, -p.py);  // p1 - i p2
    Spinor u{};
    if (s == 1) {
        u = {1.0, 0.0, p.pz / denom, pp / denom};
    } else {
        u = {0.0, 1.0, pm / denom, -p.pz / denom};
    }
    for (auto& c : u) c *= norm;
    return u;
}

/// Negative-frequency spinor v_s(p), s in {1, 2}.
inline Spinor dirac_v(const FourMomentum& p, int s, double m) {
    if (!(p.E + m > 0.0)) throw std::domain_error("dirac_v: E + m must be positive");
    if (s != 1 && s != 2) throw std::invalid_argument("dirac_v: spin index must be 1 or 2");
    const double denom = p.E + m;
    const double norm = std::sqrt(denom / (2.0 * m));
    const cdouble pp(p.px, p.py);
    const cdouble pm(p.px, -p.py);
    Spinor v{};
    if (s == 2) {
        v = {p.pz / denom, pp / denom, 1.0, 0.0};
    } else {
        v = {pm / denom, -p.pz / denom, 0.0, 1.0};
    }
    for (auto& c : v) c *= norm;
    return v;
}

/// Dirac adjoint psi-bar = psi^dagger gamma^0.
inline Spinor dirac_adjoint(const Spinor& s) {
    const auto& g0 = spinor_basis().gamma[0];
    Spinor conj{std::conj(s[0]), std::conj(s[1]), std::conj(s[2]), std::conj(s[3])};
    Spinor r{};
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 4; ++i) r[j] += conj[i] * g0[i][j];
    return r;
}

inline cdouble spinor_bracket(const Spinor& bar, const SpinorMatrix& m, const Spinor& ket) {
    cdouble acc = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) acc += bar[i] * m[i][j] * ket[j];
    return acc;
}

inline cdouble spinor_dot(const Spinor& bar, const Spinor& ket) {
    return bar[0] * ket[0] + bar[1] * ket[1] + bar[2] * ket[2] + bar[3] * ket[3];
}

/// Lowest-order TQM fermion propagator: (pslash + m) times the scalar
/// two-branch denominator structure.
inline SpinorMatrix dirac_tqm_propagator(double omega, const FourMomentum& p, double m,
                                         double eps) {
    if (p.E == 0.0) throw std::domain_error("dirac_tqm_propagator: E = 0 is singular");
    const PropagatorValue scalar = spin0_tqm_packed(omega, p, m, eps);
    SpinorMatrix numer = spinor_basis().slash(p);
    for (int i = 0; i < 4; ++i) numer[i][i] += m;
    return scalar.value * numer;
}

/// Attosecond fermion form i (pslash + m) / (E^2 - p^2 - m^2).
inline SpinorMatrix dirac_attosecond(const FourMomentum& p, double m, double pole_tol = 1e-12) {
    const PropagatorValue scalar = spin0_attosecond(p, m, pole_tol);
    SpinorMatrix numer = spinor_basis().slash(p);
    for (int i = 0; i < 4; ++i) numer[i][i] += m;
    return scalar.value * numer;
}

/// QED vertex factor -i e ubar gamma^mu u.
inline cdouble vertex_factor(const Spinor& ubar, int mu, const Spinor& u, double e) {
    if (mu < 0 || mu > 3) throw std::invalid_argument("vertex_factor: index out of range");
    return -iu * e * spinor_bracket(ubar, spinor_basis().gamma[mu], u);
}

}  // namespace tqmkit
