#pragma once

// The ABC toy model end-to-end: plane-wave matrix elements, the w = 0
// theorem for on-shell inputs, stick-and-cloud GTF scattering, outgoing
// time/energy correlations, the single slit in time, symmetrization, and
// the narrow-beam reduction of the three QED tree processes.

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>

#include "tqmkit/dirac.hpp"
#include "tqmkit/gtf.hpp"
#include "tqmkit/units.hpp"

namespace tqmkit {

/// A and C carry mass m, the exchanged B carries mass mu, coupling lambda.
struct AbcModel {
    double m = 1.0;
    double mu = 0.1;
    double lambda = 0.01;

    void validate() const {
        if (!(m > 0.0)) throw std::invalid_argument("AbcModel: m must be positive");
        if (mu < 0.0) throw std::invalid_argument("AbcModel: mu must be nonnegative");
    }
};

/// Center-of-mass exchange event: A in with p1, C in with q2 = -p1 spatially,
/// scattering angle theta.
struct ScatterEvent {
    FourMomentum p1;
    FourMomentum q2;
    double theta = 0.0;
    bool center_of_mass = true;

    static ScatterEvent cm(double m, double pmag, double theta) {
        ScatterEvent e;
        e.p1 = make_on_shell(m, pmag, 0, 0);
        e.q2 = make_on_shell(m, -pmag, 0, 0);
        e.theta = theta;
        return e;
    }

    void validate() const {
        if (center_of_mass &&
            (p1.px + q2.px != 0.0 || p1.py + q2.py != 0.0 || p1.pz + q2.pz != 0.0))
            throw std::invalid_argument("ScatterEvent: center-of-mass requires p1 = -q2");
    }
};

/// t-channel plane-wave matrix element M^S = i lambda^2 / (2 p^2 (1-cos) + mu^2).
inline cdouble plane_wave_matrix_element(const AbcModel& model, const ScatterEvent& ev) {
    model.validate();
    ev.validate();
    const double p2 = ev.p1.p_squared3();
    const double den = 2.0 * p2 * (1.0 - std::cos(ev.theta)) + model.mu * model.mu;
    if (den == 0.0) throw std::domain_error("plane_wave_matrix_element: forward pole (mu = 0, theta = 0)");
    return iu * model.lambda * model.lambda / den;
}

/// Sum of the outgoing clock frequencies as a function of the exchanged
/// quantum energy w; its root is the allowed w.
inline double vertex_clock_energy_residual(const AbcModel& model, const ScatterEvent& ev,
                                           double w) {
    const double ebar = ev.p1.E;
    const double p2 = ev.p1.p_squared3();  // elastic: |p3| = |p1|
    const double m2 = model.m * model.m;
    auto varpi = [&](double e) { return -(e * e - p2 - m2) / (2.0 * e); };
    return varpi(ebar - w) + varpi(ebar + w);
}

/// Solve the vertex clock-energy constraint for the exchanged B's quantum
/// energy. For on-shell plane-wave inputs the unique root is w = 0 (the
/// theorem that on-shell plane waves show no TQM effect). `offshell_delta`
/// perturbs the incoming energy Ebar -> Ebar (1 + delta) to probe the
/// continuation away from the theorem.
inline double exchanged_energy_tqm(const AbcModel& model, const ScatterEvent& ev,
                                   double offshell_delta = 0.0) {
    model.validate();
    ev.validate();
    const double m2 = model.m * model.m;
    const double onshell_gap =
        std::abs(ev.p1.E * ev.p1.E - ev.p1.p_squared3() - m2) / (ev.p1.E * ev.p1.E);
    if (offshell_delta == 0.0 && onshell_gap > 1e-9)
        throw std::invalid_argument("exchanged_energy_tqm: incoming legs must be on shell");
    ScatterEvent pev = ev;
    pev.p1.E *= (1.0 + offshell_delta);
    pev.q2.E *= (1.0 + offshell_delta);
    // The residual is even in w: 2 Ebar (D - w^2) / ... with D the on-shell
    // gap. Bisect on w >= 0 between 0 and Ebar/2.
    auto f = [&](double w) { return vertex_clock_energy_residual(model, pev, w); };
    double lo = 0.0, hi = pev.p1.E * 0.5;
    double flo = f(lo);
    if (std::abs(flo) < 1e-15) return 0.0;
    double fhi = f(hi);
    if (flo * fhi > 0.0) return 0.0;  // no sign change: root at w = 0
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if (std::abs(fm) < 1e-15 || hi - lo < 1e-16 * pev.p1.E) return mid;
        if (flo * fm <= 0.0) {
            hi = mid;
            fhi = fm;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------------------
// Stick-and-cloud GTF scattering

/// Outgoing joint Gaussian: centers from the plane-wave stick, per-axis
/// dispersion sigma3^2 = sigma1^2 + sigma2^2 (the Gaussian convolution).
struct OutgoingCloud {
    std::array<double, 4> sigma1_sq{};  // input A dispersions (E, px, py, pz)
    std::array<double, 4> sigma2_sq{};  // input C dispersions
    std::array<double, 4> sigma3_sq{};  // outgoing sum-cloud dispersions
    FourMomentum p3_center{};
    FourMomentum q4_center{};
    cdouble common_factor{};  // Sbar = prod sqrt(m/Ebar) * i/(k^2 + mu^2)
    bool has_energy_axis = true;
};

namespace detail {

inline std::array<double, 4> momentum_dispersions(const Gaussian4& g) {
    // momentum-space dispersion on each axis is 1/Sigma_ii
    std::array<double, 4> s{};
    for (int i = 0; i < 4; ++i) s[i] = 1.0 / g.disp[i][i];
    return s;
}

}  // namespace detail

/// Narrow-beam stick-and-cloud scattering of two GTFs at angle theta.
/// Requires sigma/scale < narrow_beam_max per axis (space axes scaled by
/// |p|, the energy axis by Ebar).
inline OutgoingCloud gtf_scatter(const AbcModel& model, const Gaussian4& phi1,
                                 const Gaussian4& phi2, double theta,
                                 double narrow_beam_max = 0.1) {
    model.validate();
    phi1.validate();
    phi2.validate();
    OutgoingCloud out;
    out.sigma1_sq = detail::momentum_dispersions(phi1);
    out.sigma2_sq = detail::momentum_dispersions(phi2);
    const double pmag = phi1.p0.p_norm3();
    const double ebar = phi1.p0.E;
    if (!(pmag > 0.0)) throw std::invalid_argument("gtf_scatter: beam momentum must be nonzero");
    for (int i = 0; i < 4; ++i) {
        const double scale = (i == 0) ? ebar : pmag;
        for (const auto* s : {&out.sigma1_sq, &out.sigma2_sq}) {
            if (!((*s)[i] > 0.0)) throw std::domain_error("gtf_scatter: zero-dispersion input");
            if (std::sqrt((*s)[i]) / scale >= narrow_beam_max)
                throw std::domain_error("gtf_scatter: narrow-beam approximation violated");
        }
        out.sigma3_sq[i] = out.sigma1_sq[i] + out.sigma2_sq[i];
    }
    // plane-wave stick: elastic CM kinematics rotate the beam by theta in the
    // x-y plane
    out.p3_center = make_on_shell(model.m, pmag * std::cos(theta), pmag * std::sin(theta), 0.0);
    out.q4_center = make_on_shell(model.m, -pmag * std::cos(theta), -pmag * std::sin(theta), 0.0);
    // common factor pulled out of the dispersion integral
    const FourMomentum k{0.0, out.p3_center.px - phi1.p0.px, out.p3_center.py - phi1.p0.py,
                         out.p3_center.pz - phi1.p0.pz};
    double norm = 1.0;
    for (int i = 0; i < 4; ++i) norm *= std::sqrt(model.m / ebar);
    out.common_factor = norm * iu / (k.p_squared3() + model.mu * model.mu);
    return out;
}

/// Joint (dt3, dt4) structure of the outgoing cloud on the energy axis.
struct TimeCorrelation {
    double sigma_e_sq = 0.0;  // sigma_E^2 = sigma_E^(1)2 + sigma_E^(2)2
    double sigma_t_sq = 0.0;  // 1 / sigma_E^2

    /// A-leg time density conditional on the C leg arriving on time:
    /// exp(-dt^2 / sigma_t^2), normalized.
    double conditional_density(double dt) const {
        return std::exp(-dt * dt / sigma_t_sq) / std::sqrt(M_PI * sigma_t_sq);
    }

    /// Marginal over dt4 keeps the same Gaussian shape.
    double marginal_density(double dt) const { return conditional_density(dt); }

    /// Correlation coefficient of (dE3, dE4) when each leg individually sees
    /// an unconstrained energy scale `leg_acceptance` (sd). The sum is pinned
    /// by the cloud: Var(S) = sigma_E^2/2, Var(D) = 4 acceptance^2, so
    /// corr -> -1 as the input widths shrink.
    double energy_correlation(double leg_acceptance) const {
        const double var_s = 0.5 * sigma_e_sq;
        const double var_d = 4.0 * leg_acceptance * leg_acceptance;
        return (var_s - var_d) / (var_s + var_d);
    }
};

inline TimeCorrelation outgoing_time_correlation(const OutgoingCloud& cloud) {
    if (!cloud.has_energy_axis)
        throw std::logic_error("outgoing_time_correlation: cloud has no energy axis");
    TimeCorrelation c;
    c.sigma_e_sq = cloud.sigma3_sq[0];
    c.sigma_t_sq = 1.0 / c.sigma_e_sq;
    return c;
}

// ---------------------------------------------------------------------------
// Single slit in time

struct SlitPrediction {
    double sigma_t_post_sq = 0.0;   // post-interaction coordinate-time width
    double delta_t_detector = 0.0;  // uncertainty at the detector plane
};

/// Gate + probe: post-interaction sigma_t^2 = 1/(sigma_E_gate^2 +
/// sigma_E_probe^2); detector-plane Dt^2 = (sigma_t^2/2)(1 + tau^2/(E^2
/// sigma_t^4)). Narrower gate (larger sigma_E_gate) means larger Dt.
inline SlitPrediction slit_in_time_prediction(double gate_sigma_e_sq, const Gaussian4& probe,
                                              double tau_bar, double e_bar) {
    if (!(tau_bar > 0.0)) throw std::invalid_argument("slit_in_time_prediction: tau_bar must be positive");
    if (!(gate_sigma_e_sq > 0.0))
        throw std::invalid_argument("slit_in_time_prediction: gate dispersion must be positive");
    const double probe_sigma_e_sq = 1.0 / probe.disp[0][0];
    const double st2 = 1.0 / (gate_sigma_e_sq + probe_sigma_e_sq);
    SlitPrediction out;
    out.sigma_t_post_sq = st2;
    const double var = 0.5 * st2 * (1.0 + tau_bar * tau_bar / (e_bar * e_bar * st2 * st2));
    out.delta_t_detector = std::sqrt(var);
    return out;
}

/// SQM comparator: an ideal clock-time gate of energy width sigma_E_gate
/// clips the arriving pulse; the transmitted width only ever shrinks,
/// 1/sigma_c^2 = 1/sigma_tau^2 + sigma_E_gate^2.
inline double slit_sqm_clipped_uncertainty(double sigma_tau_sqm_sq, double gate_sigma_e_sq) {
    const double inv = 1.0 / sigma_tau_sqm_sq + gate_sigma_e_sq;
    return std::sqrt(0.5 / inv);
}

// ---------------------------------------------------------------------------

enum class ExchangeStatistics { boson, fermion };

/// Indistinguishable-particle combination of the t- and u-channel amplitudes.
inline cdouble symmetrize(cdouble amp_t, cdouble amp_u, ExchangeStatistics stat) {
    return stat == ExchangeStatistics::boson ? amp_t + amp_u : amp_t - amp_u;
}

/// Vertex/assignment counting of the stick-and-cloud calculation: four
/// emission/absorption assignments times the two 1/2 vertex factors, kept
/// as an exact rational.
inline std::pair<long, long> abc_counting_factor() {
    long num = 4;   // B from first or second vertex, emitted by A or by C
    long den = 4;   // 1/2 per vertex, two vertices
    long g = 4;     // gcd
    return {num / g, den / g};  // {1, 1}
}

// ---------------------------------------------------------------------------
// Narrow-beam reduction of the QED tree processes

enum class QedProcess { moller, bhabha, compton };

struct ChannelReport {
    double s = 0, t = 0, u = 0;  // Mandelstam invariants of the SQM stick
    // two propagator denominators per process, SQM and TQM narrow-beam modes
    std::array<double, 2> sqm_den{};
    std::array<double, 2> tqm_den{};
    std::array<double, 2> rel_dev{};
};

/// CM kinematics with quantum-energy offsets dE[i] on legs (1,2,3,4).
/// Returns channel invariants and the propagator denominators with the SQM
/// values at dE = 0 and the TQM values at the supplied offsets. Offsets must
/// conserve total energy (dE1 + dE2 = dE3 + dE4).
inline ChannelReport qed_channel_map(QedProcess proc, double m, double pmag, double theta,
                                     const std::array<double, 4>& de = {0, 0, 0, 0}) {
    if (std::abs(de[0] + de[1] - de[2] - de[3]) > 1e-12 * std::max(1.0, std::abs(de[0])))
        throw std::invalid_argument("qed_channel_map: quantum-energy offsets must conserve energy");
    const bool photon_legs = (proc == QedProcess::compton);
    const double c = std::cos(theta), s = std::sin(theta);
    // legs 1,2 incoming along +-x; 3,4 outgoing rotated by theta
    FourMomentum p1 = make_on_shell(m, pmag, 0, 0);
    FourMomentum p2 = photon_legs ? FourMomentum{pmag, -pmag, 0, 0}
                                  : make_on_shell(m, -pmag, 0, 0);
    FourMomentum p3 = make_on_shell(m, pmag * c, pmag * s, 0);
    FourMomentum p4 = photon_legs ? FourMomentum{pmag, -pmag * c, -pmag * s, 0}
                                  : make_on_shell(m, -pmag * c, -pmag * s, 0);

    auto inv = [](const FourMomentum& a) { return minkowski_norm2(a); };
    ChannelReport r;
    r.s = inv(p1 + p2);
    r.t = inv(p1 - p3);
    r.u = inv(p1 - p4);

    FourMomentum t1 = p1, t2 = p2, t3 = p3, t4 = p4;
    t1.E += de[0];
    t2.E += de[1];
    t3.E += de[2];
    t4.E += de[3];

    const double me2 = m * m;
    switch (proc) {
        case QedProcess::moller:
            // photon exchange in t and u channels: den = (dp)^2
            r.sqm_den = {inv(p1 - p3), inv(p1 - p4)};
            r.tqm_den = {inv(t1 - t3), inv(t1 - t4)};
            break;
        case QedProcess::bhabha:
            // s-channel annihilation photon and t-channel exchange photon
            r.sqm_den = {inv(p1 + p2), inv(p1 - p3)};
            r.tqm_den = {inv(t1 + t2), inv(t1 - t3)};
            break;
        case QedProcess::compton:
            // fermion propagator in s and t channels: den = (.)^2 - m^2
            r.sqm_den = {inv(p1 + p2) - me2, inv(p1 - p4) - me2};
            r.tqm_den = {inv(t1 + t2) - me2, inv(t1 - t4) - me2};
            break;
    }
    for (int i = 0; i < 2; ++i) {
        const double scale = std::max(std::abs(r.sqm_den[i]), 1e-300);
        r.rel_dev[i] = std::abs(r.tqm_den[i] - r.sqm_den[i]) / scale;
        if (r.sqm_den[i] == 0.0) throw std::domain_error("qed_channel_map: channel pole");
    }
    return r;
}

/// Maximum relative component deviation of u(p with E = E_p + dE) from the
/// SQM spinor u^S(p), maximized over both spin states.
inline double narrow_beam_spinor_deviation(const FourMomentum& p, double delta_e, double m) {
    const double ep = on_shell_energy(m, p);
    if (!(std::abs(delta_e) < 0.3 * (ep + m)))
        throw std::invalid_argument("narrow_beam_spinor_deviation: |dE| too large for the expansion");
    FourMomentum pe = p;
    pe.E = ep;
    FourMomentum shifted = pe;
    shifted.E = ep + delta_e;
    double dev = 0.0;
    for (int s : {1, 2}) {
        Spinor base = dirac_u(pe, s, m);
        Spinor moved = dirac_u(shifted, s, m);
        double ref = 0.0;
        for (int i = 0; i < 4; ++i) ref = std::max(ref, std::abs(base[i]));
        for (int i = 0; i < 4; ++i) dev = std::max(dev, std::abs(moved[i] - base[i]) / ref);
    }
    return dev;
}

}  // namespace tqmkit
