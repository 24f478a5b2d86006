#pragma once

// Natural units (hbar = c = 1) with eV as the base energy unit. Times are
// carried internally in 1/eV and converted at I/O boundaries. Metric
// signature is (+,-,-,-) throughout.

#include <cmath>
#include <stdexcept>
#include <string>

namespace tqmkit {

/// hbar in eV*s (CODATA).
inline constexpr double hbar_ev_s = 6.582119569e-16;

/// One 1/eV expressed in attoseconds: hbar / (1e-18 s).
inline constexpr double attoseconds_per_inverse_ev = hbar_ev_s / 1e-18;

enum class TimeUnit { attoseconds, inverse_ev };

/// Convert a time value between attoseconds and 1/eV. Round-trips to 1e-12.
inline double time_energy_convert(double x, TimeUnit from) {
    if (!std::isfinite(x)) throw std::invalid_argument("time_energy_convert: non-finite input");
    switch (from) {
        case TimeUnit::inverse_ev:  return x * attoseconds_per_inverse_ev;
        case TimeUnit::attoseconds: return x / attoseconds_per_inverse_ev;
    }
    throw std::invalid_argument("time_energy_convert: unknown unit tag");
}

/// Contravariant four-momentum (E, px, py, pz) in eV.
struct FourMomentum {
    double E  = 0.0;
    double px = 0.0;
    double py = 0.0;
    double pz = 0.0;

    double p_squared3() const { return px * px + py * py + pz * pz; }
    double p_norm3() const { return std::sqrt(p_squared3()); }

    FourMomentum operator+(const FourMomentum& o) const { return {E + o.E, px + o.px, py + o.py, pz + o.pz}; }
    FourMomentum operator-(const FourMomentum& o) const { return {E - o.E, px - o.px, py - o.py, pz - o.pz}; }
    FourMomentum operator-() const { return {-E, -px, -py, -pz}; }
    FourMomentum operator*(double s) const { return {E * s, px * s, py * s, pz * s}; }
};

/// Minkowski product E_p E_q - p.q with signature (+,-,-,-).
inline double minkowski_dot(const FourMomentum& p, const FourMomentum& q) {
    return p.E * q.E - (p.px * q.px + p.py * q.py + p.pz * q.pz);
}

/// Invariant square p.p.
inline double minkowski_norm2(const FourMomentum& p) { return minkowski_dot(p, p); }

/// Relativistic mass E_p = sqrt(m^2 + p^2). Rejects m < 0.
inline double on_shell_energy(double m, double px, double py, double pz) {
    if (m < 0.0) throw std::invalid_argument("on_shell_energy: negative mass");
    return std::sqrt(m * m + px * px + py * py + pz * pz);
}

inline double on_shell_energy(double m, const FourMomentum& p) {
    return on_shell_energy(m, p.px, p.py, p.pz);
}

/// Put a three-momentum on shell for mass m.
inline FourMomentum make_on_shell(double m, double px, double py, double pz) {
    return {on_shell_energy(m, px, py, pz), px, py, pz};
}

/// Shared numeric tolerances. rel_tol is intended for analytic identities,
/// quad_rel_tol for quadrature-vs-analytic comparisons.
struct Tolerances {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    double quad_rel_tol = 1e-3;
    int quad_points = 64;
    long mc_samples = 100000;

    void validate() const {
        if (rel_tol <= 0 || abs_tol <= 0 || quad_rel_tol <= 0 || quad_points <= 0 || mc_samples <= 0)
            throw std::invalid_argument("Tolerances: all fields must be strictly positive");
    }
};

inline const Tolerances& default_tolerances() {
    static const Tolerances tol{};
    return tol;
}

}  // namespace tqmkit
