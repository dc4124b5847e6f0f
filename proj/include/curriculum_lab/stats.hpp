// Streaming moments, rate estimates, and the statistical tests used by
// the verification suites.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

#include "curriculum_lab/errors.hpp"

namespace curriculum_lab {

inline double normal_pdf(double x) {
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

// Welford accumulator with exact pairwise merge; merging a fixed sequence
// of chunk accumulators in chunk order gives results independent of how
// the chunks were scheduled across threads.
struct RunningStat {
    std::uint64_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++n;
        const double delta = x - mean;
        mean += delta / static_cast<double>(n);
        m2 += delta * (x - mean);
    }

    void merge(const RunningStat& other) {
        if (other.n == 0) return;
        if (n == 0) {
            *this = other;
            return;
        }
        const double na = static_cast<double>(n);
        const double nb = static_cast<double>(other.n);
        const double delta = other.mean - mean;
        const double total = na + nb;
        mean += delta * nb / total;
        m2 += other.m2 + delta * delta * na * nb / total;
        n += other.n;
    }

    double variance() const { return n > 1 ? m2 / static_cast<double>(n - 1) : 0.0; }

    double std_error() const {
        return n > 1 ? std::sqrt(variance() / static_cast<double>(n)) : 0.0;
    }
};

enum class EstimateMethod { MonteCarlo, ClosedForm, Quadrature };

inline const char* to_string(EstimateMethod m) {
    switch (m) {
        case EstimateMethod::MonteCarlo: return "MonteCarlo";
        case EstimateMethod::ClosedForm: return "ClosedForm";
        case EstimateMethod::Quadrature: return "Quadrature";
    }
    return "?";
}

// Estimate of an expected one-step convergence rate.
struct RateEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t n = 0;
    EstimateMethod method = EstimateMethod::MonteCarlo;

    static RateEstimate exact(double value, EstimateMethod method) {
        return RateEstimate{value, 0.0, 1, method};
    }
};

// Two-sample Kolmogorov-Smirnov statistic, sup_x |F_a(x) - F_b(x)|.
inline double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw error("ks_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double stat = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        stat = std::max(stat, std::fabs(static_cast<double>(i) / na -
                                        static_cast<double>(j) / nb));
    }
    return stat;
}

// Asymptotic two-sample KS critical value at level alpha.
inline double ks_critical(double alpha, std::size_t n, std::size_t m) {
    const double c = std::sqrt(-0.5 * std::log(alpha / 2.0));
    return c * std::sqrt(static_cast<double>(n + m) /
                         (static_cast<double>(n) * static_cast<double>(m)));
}

inline double log_binomial_coeff(int n, int k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// One-sided sign test: P(X >= wins) for X ~ Binomial(trials, 1/2).
inline double sign_test_p_value(int wins, int trials) {
    if (wins < 0 || trials < 0 || wins > trials) throw error("sign_test: bad counts");
    const double log_half = std::log(0.5);
    double p = 0.0;
    for (int k = wins; k <= trials; ++k) {
        p += std::exp(log_binomial_coeff(trials, k) + trials * log_half);
    }
    return std::min(p, 1.0);
}

}  // namespace curriculum_lab
