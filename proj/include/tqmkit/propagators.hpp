#pragma once

// Spin-zero propagator forms: SQM packed, TQM packed, unpacked, attosecond;
// the clock frequency; photon wrapper -g^{mu nu} * scalar(m = 0).

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "tqmkit/units.hpp"

namespace tqmkit {

using cdouble = std::complex<double>;
inline constexpr cdouble iu{0.0, 1.0};

enum class PropagatorForm { sqm_packed, tqm_packed, unpacked, attosecond };

struct PropagatorValue {
    cdouble value{0.0, 0.0};
    PropagatorForm form = PropagatorForm::sqm_packed;
    double epsilon = 0.0;
};

/// Clock frequency varpi_k = -(w^2 - k^2 - m^2) / (2w). Zero on shell.
inline double clock_frequency(const FourMomentum& k, double m) {
    if (k.E == 0.0) throw std::domain_error("clock_frequency: w = 0 is singular");
    return -(k.E * k.E - k.p_squared3() - m * m) / (2.0 * k.E);
}

/// SQM packed form i / (omega^2 - k^2 - m^2 + i eps).
inline PropagatorValue spin0_sqm_packed(double omega, const std::array<double, 3>& k3, double m,
                                        double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("spin0_sqm_packed: eps must be positive");
    const double k2 = k3[0] * k3[0] + k3[1] * k3[1] + k3[2] * k3[2];
    const cdouble den = cdouble(omega * omega - k2 - m * m, eps);
    return {iu / den, PropagatorForm::sqm_packed, eps};
}

/// TQM packed form: the two Feynman branches
///   i/(w^2 - k^2 - m^2 + 2 w omega + 2 w i eps) + i/(... - 2 w i eps).
inline PropagatorValue spin0_tqm_packed(double omega, const FourMomentum& k, double m, double eps) {
    if (k.E == 0.0) throw std::domain_error("spin0_tqm_packed: w = 0 is singular");
    if (!(eps > 0.0)) throw std::invalid_argument("spin0_tqm_packed: eps must be positive");
    const double d = k.E * k.E - k.p_squared3() - m * m + 2.0 * k.E * omega;
    const double we = 2.0 * k.E * eps;
    const cdouble v = iu / cdouble(d, we) + iu / cdouble(d, -we);
    return {v, PropagatorForm::tqm_packed, eps};
}

/// Unpacked form exp(-i varpi tau)/(2w) with the Feynman sign structure:
/// + for tau > 0, - for tau < 0, 0 at tau = 0 (theta(0) = 1/2 cancels the
/// two branches in the signed sum; use the attosecond form there).
inline PropagatorValue spin0_unpacked(const FourMomentum& k, double m, double tau) {
    if (k.E == 0.0) throw std::domain_error("spin0_unpacked: w = 0 is singular");
    if (tau == 0.0) return {cdouble(0.0, 0.0), PropagatorForm::unpacked, 0.0};
    const double varpi = clock_frequency(k, m);
    const cdouble v = std::exp(-iu * varpi * tau) / (2.0 * k.E);
    return {tau > 0.0 ? v : -v, PropagatorForm::unpacked, 0.0};
}

/// Attosecond (short clock time) form i / (w^2 - k^2 - m^2): no i eps, no
/// imposed direction in time. Rejects on-shell input (pole).
inline PropagatorValue spin0_attosecond(const FourMomentum& k, double m,
                                        double pole_tol = 1e-12) {
    const double d = k.E * k.E - k.p_squared3() - m * m;
    const double scale = std::abs(k.E * k.E) + k.p_squared3() + m * m;
    if (std::abs(d) <= pole_tol * std::max(scale, 1.0))
        throw std::domain_error("spin0_attosecond: on-shell pole");
    return {iu / d, PropagatorForm::attosecond, 0.0};
}

/// Photon TQM propagator: -g^{mu nu} times the massless scalar, a diagonal
/// 4x4 in the (+,-,-,-) metric.
inline std::array<std::array<PropagatorValue, 4>, 4> photon_tqm(double omega,
                                                                const FourMomentum& k,
                                                                double eps) {
    if (k.E == 0.0) throw std::domain_error("photon_tqm: w = 0 is singular");
    const PropagatorValue scalar = spin0_tqm_packed(omega, k, 0.0, eps);
    std::array<std::array<PropagatorValue, 4>, 4> d{};
    const double gdiag[4] = {1.0, -1.0, -1.0, -1.0};
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
            d[mu][nu].form = PropagatorForm::tqm_packed;
            d[mu][nu].epsilon = eps;
            d[mu][nu].value = (mu == nu) ? -gdiag[mu] * scalar.value : cdouble(0.0, 0.0);
        }
    return d;
}

/// Attosecond photon form -g^{mu nu} i / (w^2 - k^2).
inline std::array<std::array<PropagatorValue, 4>, 4> photon_attosecond(const FourMomentum& k,
                                                                       double pole_tol = 1e-12) {
    const PropagatorValue scalar = spin0_attosecond(k, 0.0, pole_tol);
    std::array<std::array<PropagatorValue, 4>, 4> d{};
    const double gdiag[4] = {1.0, -1.0, -1.0, -1.0};
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
            d[mu][nu].form = PropagatorForm::attosecond;
            d[mu][nu].value = (mu == nu) ? -gdiag[mu] * scalar.value : cdouble(0.0, 0.0);
        }
    return d;
}

/// The four unit polarization vectors (paper basis: coordinate axes).
struct PolarizationBasis {
    std::array<FourMomentum, 4> eps{FourMomentum{1, 0, 0, 0}, FourMomentum{0, 1, 0, 0},
                                    FourMomentum{0, 0, 1, 0}, FourMomentum{0, 0, 0, 1}};
};

/// Default pole softening: eps = 1e-6 times the scale of the denominator.
inline double default_epsilon(const FourMomentum& k, double m) {
    const double scale = k.E * k.E + k.p_squared3() + m * m;
    return 1e-6 * std::max(scale, 1.0);
}

}  // namespace tqmkit
