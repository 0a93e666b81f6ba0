#pragma once

// Test-only oracles, independent of the library's computation paths:
// reflection-principle laws for the Brownian running supremum, KS statistics,
// and the Gamma-function route to the stable normalization constant.

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace oracle {

inline double norm_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

// P( sup_{s<=t} |B_s| <= a ) for standard Brownian motion: theta series for
// large t/a^2, image-charge expansion otherwise.
inline double bm_sup_cdf(double a, double t) {
    if (a <= 0.0) return 0.0;
    if (t <= 0.0) return 1.0;
    const double pi = 3.14159265358979323846;
    if (t / (a * a) > 0.5) {
        double sum = 0.0;
        for (int k = 0; k < 64; ++k) {
            const double c = 2.0 * k + 1.0;
            const double term = (k % 2 ? -1.0 : 1.0) / c *
                                std::exp(-c * c * pi * pi * t / (8.0 * a * a));
            sum += term;
            if (std::abs(term) < 1e-18) break;
        }
        return std::clamp(4.0 / pi * sum, 0.0, 1.0);
    }
    const double s = std::sqrt(t);
    double sum = 0.0;
    for (int k = -60; k <= 60; ++k) {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        sum += sign * (norm_cdf((2.0 * k + 1.0) * a / s) - norm_cdf((2.0 * k - 1.0) * a / s));
    }
    return std::clamp(sum, 0.0, 1.0);
}

inline double bm_exit_prob(double radius, double t) { return 1.0 - bm_sup_cdf(radius, t); }

// Kolmogorov-Smirnov statistics.
inline double ks_one_sample(std::vector<double> sample,
                            const std::function<double(double)>& cdf) {
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
    }
    return d;
}

inline double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j]) ++i;
        else ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / a.size() -
                                 static_cast<double>(j) / b.size()));
    }
    return d;
}

// Independent route to C(alpha) = ∫_0^∞ (1-cos u) u^{-1-alpha} du via the
// Gamma-function identity (alpha != 1) or the exact value pi/2 (alpha == 1).
inline double stable_head_constant_gamma(double alpha) {
    const double pi = 3.14159265358979323846;
    if (alpha == 1.0) return pi / 2.0;
    return std::tgamma(2.0 - alpha) / (alpha * (1.0 - alpha)) * std::cos(pi * alpha / 2.0);
}

inline double mean(const std::vector<double>& v) {
    double acc = 0.0;
    for (double x : v) acc += x;
    return acc / static_cast<double>(v.size());
}

inline double variance(const std::vector<double>& v) {
    const double m = mean(v);
    double acc = 0.0;
    for (double x : v) acc += (x - m) * (x - m);
    return acc / static_cast<double>(v.size() - 1);
}

}  // namespace oracle
