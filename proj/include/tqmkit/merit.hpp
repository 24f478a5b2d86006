#pragma once

// Experiment figure of merit: the sample size needed to tell the TQM
// arrival-time variance from the SQM one at a chosen significance, and
// M = log10(seconds).

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "tqmkit/numeric.hpp"

namespace tqmkit {

struct MeritInputs {
    double sigma_sqm = 1.0;
    double sigma_tqm_total = 2.0;
    double sigmas = 5.0;    // significance level in normal sigmas
    double rate_T = 1.0;    // tests per second
    bool two_sided = false; // doubles the tail probability
    double power = 0.5;     // target rejection probability (median experiment)

    void validate() const {
        if (!(sigma_sqm > 0.0) || !(sigma_tqm_total >= sigma_sqm))
            throw std::invalid_argument("MeritInputs: need sigma_tqm_total >= sigma_sqm > 0");
        if (!(rate_T > 0.0) || !(sigmas > 0.0))
            throw std::invalid_argument("MeritInputs: rate and sigmas must be positive");
    }

    double variance_ratio() const {
        return (sigma_tqm_total / sigma_sqm) * (sigma_tqm_total / sigma_sqm);
    }

    double tail_alpha() const {
        double a = normal_sf(sigmas);
        return two_sided ? 2.0 * a : a;
    }
};

struct MeritReport {
    long N = 0;
    double seconds = 0.0;
    double M = 0.0;
    std::string test_name;
};

/// Normal-approximation sample size: the sample variance of N draws has
/// sd ~ sigma^2 sqrt(2/N), so the smallest N with
/// (sigma_T^2 - sigma_S^2) / (sigma_S^2 sqrt(2/N)) >= sigmas is
/// N = ceil(2 sigmas^2 / (r - 1)^2), r the variance ratio.
inline long required_samples(const MeritInputs& in) {
    in.validate();
    const double r = in.variance_ratio();
    if (!(r > 1.0)) throw std::domain_error("required_samples: no discriminable signal (ratio <= 1)");
    const double n = 2.0 * in.sigmas * in.sigmas / ((r - 1.0) * (r - 1.0));
    return static_cast<long>(std::ceil(n));
}

inline MeritReport figure_of_merit(long n, double rate_t, const std::string& name = "") {
    if (n < 1 || !(rate_t > 0.0)) throw std::invalid_argument("figure_of_merit: bad inputs");
    MeritReport r;
    r.N = n;
    r.seconds = static_cast<double>(n) / rate_t;
    r.M = std::log10(r.seconds);
    r.test_name = name;
    return r;
}

inline int merit_thread_cap() {
    if (const char* env = std::getenv("TQMKIT_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

namespace detail {

/// Empirical rejection probability of the one-sided variance test at sample
/// size n: draw n values from N(0, sigma_T^2), reject the SQM null when
/// sum x^2 / sigma_S^2 exceeds the normal-approximation threshold
/// n (1 + z sqrt(2/n)) that required_samples is built on. Deterministic:
/// trial streams are seeded by (seed, n, trial index) so the result is
/// independent of scheduling.
inline double rejection_probability(const MeritInputs& in, long n, long trials, uint64_t seed) {
    const double z = normal_upper_quantile(in.tail_alpha());
    const double threshold = n + z * std::sqrt(2.0 * n);
    const double var_ratio = in.variance_ratio();
    const int nthreads = std::min<long>(merit_thread_cap(), std::max<long>(1, trials / 256));
    std::vector<long> hits(nthreads, 0);
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) {
        pool.emplace_back([&, t]() {
            long local = 0;
            for (long k = t; k < trials; k += nthreads) {
                Rng rng(seed ^ (0x9e3779b97f4a7c15ULL * (k + 1)) ^ (uint64_t(n) << 32));
                double acc = 0.0;
                for (long i = 0; i < n; ++i) {
                    double x = rng.normal();
                    acc += x * x;  // draws from N(0, sigma_T^2), scaled below
                }
                if (acc * var_ratio > threshold) ++local;
            }
            hits[t] = local;
        });
    }
    for (auto& th : pool) th.join();
    long total = 0;
    for (long h : hits) total += h;
    return static_cast<double>(total) / trials;
}

}  // namespace detail

/// Monte Carlo power oracle: the smallest N whose empirical rejection
/// probability reaches the target power. Bisection over N against the
/// simulated test; deterministic for a fixed seed.
inline long mc_power_oracle(const MeritInputs& in, long trials, uint64_t seed) {
    in.validate();
    if (trials < 10000) throw std::invalid_argument("mc_power_oracle: trials must be >= 1e4");
    if (!(in.variance_ratio() > 1.0))
        throw std::domain_error("mc_power_oracle: no discriminable signal");

    auto power_at = [&](long n) { return detail::rejection_probability(in, n, trials, seed); };

    // bracket: grow from around the analytic estimate
    long lo = 1;
    long hi = std::max<long>(2, required_samples(in) / 4);
    while (power_at(hi) < in.power) {
        lo = hi;
        hi *= 2;
        if (hi > (1L << 24)) throw std::runtime_error("mc_power_oracle: sample size out of range");
    }
    if (lo == 1 && power_at(1) >= in.power) return 1;
    while (hi - lo > 1) {
        long mid = lo + (hi - lo) / 2;
        if (power_at(mid) >= in.power)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

}  // namespace tqmkit
