#pragma once

// Quadrature rules, tail statistics, and a small deterministic RNG.

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace tqmkit {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Gauss-Hermite rule: sum_i w_i f(x_i) ~ int e^{-x^2} f(x) dx.
/// Newton iteration on the physicists' Hermite recurrence.
inline QuadratureRule gauss_hermite(int n) {
    if (n < 1) throw std::invalid_argument("gauss_hermite: n < 1");
    QuadratureRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    const double pim4 = 0.7511255444649425;  // pi^{-1/4}
    const int m = (n + 1) / 2;
    double z = 0.0;
    for (int i = 0; i < m; ++i) {
        if (i == 0)
            z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
        else if (i == 1)
            z -= 1.14 * std::pow(n, 0.426) / z;
        else if (i == 2)
            z = 1.86 * z - 0.86 * r.nodes[n - 1];
        else if (i == 3)
            z = 1.91 * z - 0.91 * r.nodes[n - 2];
        else
            z = 2.0 * z - r.nodes[n - i + 1];
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = pim4, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / (j + 1.0)) * p2 - std::sqrt(double(j) / (j + 1.0)) * p3;
            }
            pp = std::sqrt(2.0 * n) * p2;
            double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        r.nodes[n - 1 - i] = z;
        r.nodes[i] = -z;
        r.weights[n - 1 - i] = 2.0 / (pp * pp);
        r.weights[i] = r.weights[n - 1 - i];
    }
    return r;
}

/// Gauss-Legendre rule on [a, b].
inline QuadratureRule gauss_legendre(int n, double a = -1.0, double b = 1.0) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n < 1");
    QuadratureRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    const int m = (n + 1) / 2;
    const double xm = 0.5 * (b + a), xl = 0.5 * (b - a);
    for (int i = 0; i < m; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        r.nodes[i] = xm - xl * z;
        r.nodes[n - 1 - i] = xm + xl * z;
        r.weights[i] = 2.0 * xl / ((1.0 - z * z) * pp * pp);
        r.weights[n - 1 - i] = r.weights[i];
    }
    return r;
}

/// Expectation of f under the Gaussian probability density with the given
/// standard deviation, centered at mean: int f(x) N(x; mean, sd^2) dx.
inline double gauss_expectation(const std::function<double(double)>& f, double mean, double sd,
                                int points = 64) {
    QuadratureRule gh = gauss_hermite(points);
    double acc = 0.0;
    for (int i = 0; i < points; ++i)
        acc += gh.weights[i] * f(mean + std::sqrt(2.0) * sd * gh.nodes[i]);
    return acc / std::sqrt(M_PI);
}

// ---------------------------------------------------------------------------
// Tail statistics

/// Regularized lower incomplete gamma P(a, x) by series expansion.
inline double gamma_p_series(double a, double x) {
    double ap = a, sum = 1.0 / a, del = sum;
    for (int n = 0; n < 500; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

/// Regularized upper incomplete gamma Q(a, x) by Lentz continued fraction.
inline double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i <= 500; ++i) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

inline double gamma_p(double a, double x) {
    if (x < 0 || a <= 0) throw std::invalid_argument("gamma_p: bad arguments");
    if (x == 0) return 0.0;
    return (x < a + 1.0) ? gamma_p_series(a, x) : 1.0 - gamma_q_cf(a, x);
}

inline double gamma_q(double a, double x) {
    if (x < 0 || a <= 0) throw std::invalid_argument("gamma_q: bad arguments");
    if (x == 0) return 1.0;
    return (x < a + 1.0) ? 1.0 - gamma_p_series(a, x) : gamma_q_cf(a, x);
}

inline double chi2_cdf(double x, double dof) { return gamma_p(dof / 2.0, x / 2.0); }
inline double chi2_sf(double x, double dof) { return gamma_q(dof / 2.0, x / 2.0); }

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }
inline double normal_sf(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

/// Upper-tail standard normal quantile: returns z with P(Z > z) = p.
inline double normal_upper_quantile(double p) {
    if (p <= 0.0 || p >= 1.0) throw std::invalid_argument("normal_upper_quantile: p out of (0,1)");
    // Acklam-style initial guess, then Newton on the survival function.
    double q = 1.0 - p;
    double z;
    if (q > 0.5) {
        z = -normal_upper_quantile(q);
    } else {
        double t = std::sqrt(-2.0 * std::log(p));
        z = t - (2.30753 + 0.27061 * t) / (1.0 + (0.99229 + 0.04481 * t) * t);
    }
    for (int i = 0; i < 60; ++i) {
        double err = normal_sf(z) - p;
        double pdf = std::exp(-0.5 * z * z) / std::sqrt(2.0 * M_PI);
        if (pdf <= 0) break;
        double dz = err / pdf;
        z += dz;
        if (std::abs(dz) < 1e-14 * std::max(1.0, std::abs(z))) break;
    }
    return z;
}

/// Chi-square upper-tail quantile: x with P(X > x) = p, X ~ chi2(dof).
inline double chi2_upper_quantile(double p, double dof) {
    if (p <= 0.0 || p >= 1.0) throw std::invalid_argument("chi2_upper_quantile: p out of (0,1)");
    // Wilson-Hilferty start, Newton refinement on log of the survival function.
    double z = normal_upper_quantile(p);
    double h = 2.0 / (9.0 * dof);
    double x = dof * std::pow(1.0 - h + z * std::sqrt(h), 3.0);
    if (x <= 0) x = dof;
    for (int i = 0; i < 200; ++i) {
        double sf = chi2_sf(x, dof);
        if (sf <= 0) { x *= 0.9; continue; }
        double logpdf = (dof / 2.0 - 1.0) * std::log(x) - x / 2.0 - std::lgamma(dof / 2.0) -
                        (dof / 2.0) * std::log(2.0);
        double pdf = std::exp(logpdf);
        // d/dx log sf = -pdf/sf; solve log sf(x) = log p
        double dx = (std::log(sf) - std::log(p)) * sf / pdf;
        x += dx;
        if (x <= 0) x = (x - dx) / 2.0;
        if (std::abs(dx) < 1e-12 * x) break;
    }
    return x;
}

// ---------------------------------------------------------------------------
// Deterministic RNG (splitmix64 seeding a xoshiro256**), Box-Muller normals.

struct Rng {
    uint64_t s[4];

    explicit Rng(uint64_t seed) {
        uint64_t x = seed;
        for (auto& si : s) {
            x += 0x9e3779b97f4a7c15ULL;
            uint64_t z = x;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            si = z ^ (z >> 31);
        }
        have_normal_ = false;
    }

    uint64_t next_u64() {
        auto rotl = [](uint64_t v, int k) { return (v << k) | (v >> (64 - k)); };
        const uint64_t result = rotl(s[1] * 5, 7) * 9;
        const uint64_t t = s[1] << 17;
        s[2] ^= s[0];
        s[3] ^= s[1];
        s[1] ^= s[2];
        s[0] ^= s[3];
        s[2] ^= t;
        s[3] = rotl(s[3], 45);
        return result;
    }

    /// Uniform in (0, 1).
    double uniform() {
        return (next_u64() >> 11) * (1.0 / 9007199254740992.0) + 5.55e-17;
    }

    double normal() {
        if (have_normal_) {
            have_normal_ = false;
            return cached_;
        }
        double u1 = uniform(), u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * M_PI * u2;
        cached_ = r * std::sin(a);
        have_normal_ = true;
        return r * std::cos(a);
    }

  private:
    bool have_normal_ = false;
    double cached_ = 0.0;
};

}  // namespace tqmkit
