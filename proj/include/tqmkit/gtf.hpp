#pragma once

// Gaussian test functions in one and four dimensions: entropic initial
// estimate, analytic clock-time evolution, Fourier pairs between coordinate
// and momentum representations.
//
// Conventions (natural units, signature (+,-,-,-)):
//   space coordinate form   ~ exp(+i p0 x),  momentum form ~ exp(-i (p-p0) x0)
//   time coordinate form    ~ exp(-i E0 t),  energy form   ~ exp(+i (E-E0) t0)
// A complex dispersion sigma_sq = sigma0^2 * f_tau carries the spreading
// factor; the density variance of exp(-u^2/(2S)) is 1/(2 Re(1/S)).

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "tqmkit/units.hpp"

namespace tqmkit {

using cdouble = std::complex<double>;

enum class Axis { time, x, y, z };
enum class Representation { coordinate, momentum };

inline double axis_time_sign(Axis a) { return a == Axis::time ? -1.0 : +1.0; }

/// One-dimensional GTF. `sigma_sq` is the (possibly complex) dispersion
/// squared in the variable of the current representation.
struct Gaussian1 {
    Axis axis = Axis::x;
    Representation rep = Representation::coordinate;
    double coordinate_center = 0.0;  // t0 or x0
    double conjugate_center = 0.0;   // E0 or p0
    cdouble sigma_sq = 1.0;
    cdouble extra_phase = 1.0;

    void validate() const {
        if (!(std::real(sigma_sq) > 0.0))
            throw std::domain_error("Gaussian1: Re(sigma_sq) must be positive");
    }

    /// Normalized amplitude at u (the current-rep variable).
    cdouble amplitude(double u) const {
        const cdouble inv_s = 1.0 / sigma_sq;
        const double re_inv = std::real(inv_s);
        const double norm = std::pow(re_inv / M_PI, 0.25);
        const double sc = axis_time_sign(axis);
        cdouble osc;
        double du;
        if (rep == Representation::coordinate) {
            du = u - coordinate_center;
            osc = std::exp(cdouble(0.0, sc * conjugate_center * u));
        } else {
            du = u - conjugate_center;
            osc = std::exp(cdouble(0.0, -sc * du * coordinate_center));
        }
        return norm * extra_phase * osc * std::exp(-du * du * inv_s * 0.5);
    }

    double density(double u) const { return std::norm(amplitude(u)); }

    /// Center of the current-rep variable.
    double center() const {
        return rep == Representation::coordinate ? coordinate_center : conjugate_center;
    }

    /// Density variance 1/(2 Re(1/S)) = |S|^2 / (2 Re S).
    double variance() const { return 1.0 / (2.0 * std::real(1.0 / sigma_sq)); }

    double uncertainty() const { return std::sqrt(variance()); }
};

/// Closed-form Fourier partner: sigma^2 flips to 1/sigma^2, centers persist,
/// representation toggles. Double application restores the original.
inline Gaussian1 fourier_pair(const Gaussian1& g) {
    g.validate();
    Gaussian1 out = g;
    out.rep = (g.rep == Representation::coordinate) ? Representation::momentum
                                                    : Representation::coordinate;
    out.sigma_sq = 1.0 / g.sigma_sq;
    return out;
}

// ---------------------------------------------------------------------------

/// Inputs to the entropic (maximum-entropy) estimate: norm, <p>, <p^2>, mass.
struct EntropicInputs {
    double norm = 1.0;
    std::array<double, 3> mean_p{0.0, 0.0, 0.0};
    double mean_p_sq = 0.0;  // <p.p>
    double mass = 0.0;
    double tau0 = 0.0;

    void validate() const {
        double p2 = mean_p[0] * mean_p[0] + mean_p[1] * mean_p[1] + mean_p[2] * mean_p[2];
        if (mean_p_sq < p2)
            throw std::invalid_argument("EntropicInputs: <p^2> < |<p>|^2");
        if (mass < 0.0) throw std::invalid_argument("EntropicInputs: negative mass");
    }
};

/// Maximum-entropy Gaussian in energy from the three moment constraints:
/// centered at Ebar = sqrt(m^2 + <p>^2) with sigma_E^2 = 2(<E^2> - Ebar^2),
/// <E^2> = m^2 + <p^2>.
inline Gaussian1 entropic_estimate(const EntropicInputs& in) {
    in.validate();
    const double p2 = in.mean_p[0] * in.mean_p[0] + in.mean_p[1] * in.mean_p[1] +
                      in.mean_p[2] * in.mean_p[2];
    const double ebar = std::sqrt(in.mass * in.mass + p2);
    const double e2 = in.mass * in.mass + in.mean_p_sq;
    const double sigma_e_sq = 2.0 * (e2 - ebar * ebar);
    if (!(sigma_e_sq > 0.0))
        throw std::domain_error("entropic_estimate: zero dispersion (<p^2> = <p>^2); widen the input");
    Gaussian1 g;
    g.axis = Axis::time;
    g.rep = Representation::momentum;
    g.conjugate_center = ebar;
    g.coordinate_center = in.tau0;
    g.sigma_sq = sigma_e_sq;
    return g;
}

// ---------------------------------------------------------------------------

using Mat4c = std::array<std::array<cdouble, 4>, 4>;
using Mat4d = std::array<std::array<double, 4>, 4>;

inline Mat4d diag4(double a, double b, double c, double d) {
    Mat4d m{};
    m[0][0] = a; m[1][1] = b; m[2][2] = c; m[3][3] = d;
    return m;
}

inline double det4_sym(const Mat4d& a);

/// Four-dimensional GTF over (t, x, y, z) / (E, px, py, pz). `disp` is the
/// coordinate-space dispersion matrix Sigma (positive definite); the momentum
/// exponent is -dp^T Q dp / 2 with Q = Sigma plus the accumulated complex
/// evolution part.
struct Gaussian4 {
    std::array<double, 4> x0{0, 0, 0, 0};  // (t0, x0, y0, z0)
    FourMomentum p0{};
    Mat4d disp{};       // Sigma, real positive definite
    Mat4c evol{};       // complex correction: Q = Sigma + evol
    Representation rep = Representation::momentum;
    cdouble global_phase = 1.0;

    static Gaussian4 diagonal(const std::array<double, 4>& x0, const FourMomentum& p0,
                              double st2, double sx2, double sy2, double sz2) {
        Gaussian4 g;
        g.x0 = x0;
        g.p0 = p0;
        g.disp = diag4(st2, sx2, sy2, sz2);
        return g;
    }

    void validate() const {
        for (int i = 0; i < 4; ++i)
            if (!(disp[i][i] > 0.0)) throw std::domain_error("Gaussian4: Sigma not positive definite");
    }

    Mat4c quadratic() const {
        Mat4c q = evol;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) q[i][j] += disp[i][j];
        return q;
    }

    /// Momentum-representation amplitude at four-momentum p.
    cdouble amplitude(const FourMomentum& p) const {
        if (rep != Representation::momentum)
            throw std::logic_error("Gaussian4::amplitude: momentum representation only");
        const std::array<double, 4> dp{p.E - p0.E, p.px - p0.px, p.py - p0.py, p.pz - p0.pz};
        const Mat4c q = quadratic();
        cdouble quad = 0.0;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) quad += dp[i] * q[i][j] * dp[j];
        // covariant phase dp_mu x0^mu = dE t0 - dp.x0
        const double lin = dp[0] * x0[0] - dp[1] * x0[1] - dp[2] * x0[2] - dp[3] * x0[3];
        // normalization from Re(Q)
        Mat4d req{};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) req[i][j] = std::real(q[i][j]);
        const double norm = std::pow(det4_sym(req), 0.25) / M_PI;
        return norm * global_phase * std::exp(cdouble(0.0, lin) - 0.5 * quad);
    }

    double density(const FourMomentum& p) const { return std::norm(amplitude(p)); }
};

inline double det4_sym(const Mat4d& a) {
    // Cholesky-free LU determinant for the small fixed size.
    double m[4][4];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m[i][j] = a[i][j];
    double det = 1.0;
    for (int k = 0; k < 4; ++k) {
        int piv = k;
        for (int i = k + 1; i < 4; ++i)
            if (std::abs(m[i][k]) > std::abs(m[piv][k])) piv = i;
        if (piv != k) {
            for (int j = 0; j < 4; ++j) std::swap(m[k][j], m[piv][j]);
            det = -det;
        }
        if (m[k][k] == 0.0) return 0.0;
        det *= m[k][k];
        for (int i = k + 1; i < 4; ++i) {
            double f = m[i][k] / m[k][k];
            for (int j = k; j < 4; ++j) m[i][j] -= f * m[k][j];
        }
    }
    return det;
}

/// Free clock-time evolution in momentum representation: multiplies the
/// amplitude pointwise by exp(i tau (E^2 - p^2 - m^2) / 2m). The closed-form
/// update shifts centers by (tau/m) g p0, adds -i tau g / m to the quadratic
/// matrix, and accumulates the on-shell global phase. |phi(p)| is unchanged
/// at every p.
inline Gaussian4 evolve_momentum(const Gaussian4& g, double tau, double m) {
    if (g.rep != Representation::momentum)
        throw std::logic_error("evolve_momentum: momentum representation required");
    if (!(m > 0.0)) throw std::invalid_argument("evolve_momentum: mass must be positive");
    Gaussian4 out = g;
    const double gsign[4] = {1.0, -1.0, -1.0, -1.0};
    // exp(i tau ((p0+dp)^2 - m^2)/2m): constant, linear, quadratic pieces
    const double p0sq = minkowski_norm2(g.p0);
    out.global_phase *= std::exp(cdouble(0.0, tau * (p0sq - m * m) / (2.0 * m)));
    const double p0v[4] = {g.p0.E, g.p0.px, g.p0.py, g.p0.pz};
    for (int i = 0; i < 4; ++i) {
        out.x0[i] += tau / m * p0v[i];  // t0 += (E0/m) tau, x0 += (p0/m) tau
        out.evol[i][i] -= cdouble(0.0, tau / m) * gsign[i];
    }
    return out;
}

/// Summary moments of a 1D coordinate density.
struct DensityMoments {
    double mean = 0.0;
    double variance = 0.0;
};

/// Time-axis coordinate density under clock evolution: mean t0 + (E0/m) tau,
/// variance (sigma_t^2/2)|1 + tau^2/(E0^2 sigma_t^4)|.
inline DensityMoments time_density(const Gaussian1& g, double tau, double e0, double m) {
    if (g.axis != Axis::time || g.rep != Representation::coordinate)
        throw std::logic_error("time_density: time-axis coordinate representation required");
    if (!(e0 > 0.0)) throw std::invalid_argument("time_density: E0 must be positive");
    if (!(m > 0.0)) throw std::invalid_argument("time_density: mass must be positive");
    const double st2 = std::real(g.sigma_sq);
    DensityMoments r;
    r.mean = g.coordinate_center + (e0 / m) * tau;
    r.variance = 0.5 * st2 * std::abs(1.0 + tau * tau / (e0 * e0 * st2 * st2));
    return r;
}

/// Nonrelativistic space-axis density: mean x0 + (p0/m) tau, variance
/// (sigma_x^2/2)|1 + tau^2/(m^2 sigma_x^4)|.
inline DensityMoments space_density_nr(const Gaussian1& g, double tau, double m, double p0) {
    if (g.axis == Axis::time || g.rep != Representation::coordinate)
        throw std::logic_error("space_density_nr: space-axis coordinate representation required");
    if (!(m > 0.0)) throw std::invalid_argument("space_density_nr: mass must be positive");
    const double sx2 = std::real(g.sigma_sq);
    DensityMoments r;
    r.mean = g.coordinate_center + (p0 / m) * tau;
    r.variance = 0.5 * sx2 * std::abs(1.0 + tau * tau / (m * m * sx2 * sx2));
    return r;
}

}  // namespace tqmkit
