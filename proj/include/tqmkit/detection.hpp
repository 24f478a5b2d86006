#pragma once

// Time-of-arrival machinery: probability-current detection rates, SQM
// clock-time dispersion, TQM coordinate-time dispersion, their convolution,
// and the TQM-minus-SQM signal.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "tqmkit/gtf.hpp"

namespace tqmkit {

enum class ArrivalKind { sqm, tqm_time_part, total };

struct ArrivalDistribution {
    ArrivalKind kind = ArrivalKind::sqm;
    double mean = 0.0;
    double variance = 0.0;
    std::function<double(double)> density;  // normalized; empty if sampled-only
    std::vector<double> sample_t;            // optional histogram support
    std::vector<double> sample_rho;

    bool sampled() const { return !sample_t.empty(); }

    static ArrivalDistribution gaussian(ArrivalKind k, double mean, double variance) {
        ArrivalDistribution d;
        d.kind = k;
        d.mean = mean;
        d.variance = variance;
        d.density = [mean, variance](double t) {
            return std::exp(-(t - mean) * (t - mean) / (2.0 * variance)) /
                   std::sqrt(2.0 * M_PI * variance);
        };
        return d;
    }

    static ArrivalDistribution from_samples(ArrivalKind k, std::vector<double> t,
                                            std::vector<double> rho) {
        if (t.size() != rho.size() || t.size() < 3)
            throw std::invalid_argument("ArrivalDistribution: bad sample arrays");
        ArrivalDistribution d;
        d.kind = k;
        d.sample_t = std::move(t);
        d.sample_rho = std::move(rho);
        double w = 0, m1 = 0;
        const double dt = d.sample_t[1] - d.sample_t[0];
        for (size_t i = 0; i < d.sample_t.size(); ++i) {
            w += d.sample_rho[i] * dt;
            m1 += d.sample_rho[i] * d.sample_t[i] * dt;
        }
        if (w <= 0) throw std::invalid_argument("ArrivalDistribution: empty density");
        for (auto& r : d.sample_rho) r /= w;
        d.mean = m1 / w;
        double m2 = 0;
        for (size_t i = 0; i < d.sample_t.size(); ++i)
            m2 += d.sample_rho[i] * (d.sample_t[i] - d.mean) * (d.sample_t[i] - d.mean) * dt;
        d.variance = m2;
        return d;
    }
};

/// SQM arrival at a plane x = L. Mean tau_bar = L / v0 with v0 = p0/E0
/// (relativistic, default) or p0/m. The variance is the exact free-Gaussian
/// crossing value Dx^2(tau_bar)/v0^2, which reduces to the far-field
/// dispersion sigma_tau^S = tau_bar / (m v0 sigma_x) (uncertainty
/// sigma_tau^S/sqrt(2)) once tau_bar >> m sigma_x^2.
struct SqmArrival {
    ArrivalDistribution dist;
    double sigma_far_field = 0.0;  // tau_bar / (m v0 sigma_x)
};

inline SqmArrival sqm_arrival(const Gaussian1& packet, double L, double p0, double m,
                              bool relativistic_v = true) {
    if (packet.axis == Axis::time || packet.rep != Representation::coordinate)
        throw std::logic_error("sqm_arrival: space-axis coordinate packet required");
    if (!(p0 > 0.0)) throw std::invalid_argument("sqm_arrival: p0 must be positive (packet never arrives)");
    if (!(L > 0.0)) throw std::invalid_argument("sqm_arrival: L must be positive");
    const double e0 = on_shell_energy(m, p0, 0, 0);
    const double v0 = relativistic_v ? p0 / e0 : p0 / m;
    const double tau_bar = L / v0;
    const double sx2 = std::real(packet.sigma_sq);
    const double dx2 = 0.5 * sx2 * std::abs(1.0 + tau_bar * tau_bar / (m * m * sx2 * sx2));
    SqmArrival out;
    out.dist = ArrivalDistribution::gaussian(ArrivalKind::sqm, tau_bar, dx2 / (v0 * v0));
    out.sigma_far_field = tau_bar / (m * v0 * std::sqrt(sx2));
    return out;
}

/// TQM coordinate-time part: Gaussian in t centered at tau_bar with the full
/// spreading form Dt^2 = (sigma_t^2/2)|1 + tau_bar^2/(scale^2 sigma_t^4)|;
/// far field sigma_tau^T = tau_bar / (scale sigma_t). `scale` is the mass for
/// massive particles, E0 for the photon analogue.
struct TqmTimePart {
    ArrivalDistribution dist;
    double sigma_far_field = 0.0;  // tau_bar / (scale sigma_t)
};

inline TqmTimePart tqm_time_part(const Gaussian1& packet, double tau_bar, double scale) {
    if (packet.axis != Axis::time || packet.rep != Representation::coordinate)
        throw std::logic_error("tqm_time_part: time-axis coordinate packet required");
    if (tau_bar < 0.0) throw std::invalid_argument("tqm_time_part: tau_bar must be nonnegative");
    const double st2 = std::real(packet.sigma_sq);
    if (!(st2 > 0.0)) throw std::domain_error("tqm_time_part: sigma_t = 0");
    if (!(scale > 0.0)) throw std::invalid_argument("tqm_time_part: scale must be positive");
    const double var = 0.5 * st2 * std::abs(1.0 + tau_bar * tau_bar / (scale * scale * st2 * st2));
    TqmTimePart out;
    out.dist = ArrivalDistribution::gaussian(ArrivalKind::tqm_time_part, tau_bar, var);
    out.sigma_far_field = tau_bar / (scale * std::sqrt(st2));
    return out;
}

namespace detail {

// Direct numerical convolution of two sampled densities on a merged uniform grid.
inline ArrivalDistribution convolve_sampled(const ArrivalDistribution& a,
                                            const ArrivalDistribution& b, double mean_out) {
    const double dta = a.sample_t[1] - a.sample_t[0];
    const double dtb = b.sample_t[1] - b.sample_t[0];
    const double dt = std::min(dta, dtb);
    auto resample = [&](const ArrivalDistribution& d, std::vector<double>& t,
                        std::vector<double>& rho) {
        double lo = d.sample_t.front(), hi = d.sample_t.back();
        int n = static_cast<int>((hi - lo) / dt) + 1;
        t.resize(n);
        rho.resize(n);
        for (int i = 0; i < n; ++i) {
            double x = lo + i * dt;
            t[i] = x;
            // linear interpolation
            double pos = (x - d.sample_t.front()) / (d.sample_t[1] - d.sample_t[0]);
            int j = std::min<int>(static_cast<int>(pos), d.sample_t.size() - 2);
            double f = pos - j;
            rho[i] = (1 - f) * d.sample_rho[j] + f * d.sample_rho[j + 1];
        }
    };
    std::vector<double> ta, ra, tb, rb;
    resample(a, ta, ra);
    resample(b, tb, rb);
    std::vector<double> t(ta.size() + tb.size() - 1), rho(ta.size() + tb.size() - 1, 0.0);
    for (size_t i = 0; i < t.size(); ++i) t[i] = ta.front() + tb.front() + i * dt;
    for (size_t i = 0; i < ra.size(); ++i)
        for (size_t j = 0; j < rb.size(); ++j) rho[i + j] += ra[i] * rb[j] * dt;
    auto out = ArrivalDistribution::from_samples(ArrivalKind::total, std::move(t), std::move(rho));
    // convolving the two tau_bar-centered densities double-counts the mean
    double shift = mean_out - out.mean;
    for (auto& x : out.sample_t) x += shift;
    out.mean = mean_out;
    return out;
}

}  // namespace detail

/// Convolution of the SQM clock-time distribution with the centered TQM
/// coordinate-time spread: variance_total = variance_sqm + variance_tqm
/// (exact for Gaussian pairs; numerical convolution for sampled densities).
inline ArrivalDistribution total_arrival(const ArrivalDistribution& sqm,
                                         const ArrivalDistribution& tqm_t) {
    // accept either argument order
    const ArrivalDistribution* s = &sqm;
    const ArrivalDistribution* t = &tqm_t;
    if (s->kind == ArrivalKind::tqm_time_part && t->kind == ArrivalKind::sqm) std::swap(s, t);
    if (s->kind != ArrivalKind::sqm || t->kind != ArrivalKind::tqm_time_part)
        throw std::invalid_argument("total_arrival: need one sqm and one tqm_time_part distribution");
    if (s->sampled() || t->sampled()) {
        if (!(s->sampled() && t->sampled()))
            throw std::invalid_argument("total_arrival: mixed sampled/analytic inputs");
        return detail::convolve_sampled(*s, *t, s->mean);
    }
    return ArrivalDistribution::gaussian(ArrivalKind::total, s->mean,
                                         s->variance + t->variance);
}

/// TQM signal: (Dt)_D^(T)2 = total variance - SQM variance, clamped at zero
/// within tolerance. Total below SQM beyond tolerance flags inconsistency.
inline double tqm_signal(double total_var, double sqm_var, double abs_tol = 1e-12) {
    if (total_var < sqm_var - abs_tol)
        throw std::domain_error("tqm_signal: total variance below SQM variance (model inconsistency)");
    return std::max(0.0, total_var - sqm_var);
}

}  // namespace tqmkit
