// Adaptive one-dimensional quadrature on a Gauss-Kronrod 7/15 rule with
// interval bisection.
#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "curriculum_lab/errors.hpp"

namespace curriculum_lab {

namespace detail {

// 15-point Kronrod extension of 7-point Gauss: {abscissa, gauss weight,
// kronrod weight}; nonzero abscissae are used at +-x.
inline constexpr double g7k15_nodes[8][3] = {
    {0.000000000000000, 0.417959183673469, 0.209482141084728},
    {0.405845151377397, 0.381830050505119, 0.190350578064785},
    {0.741531185599394, 0.279705391489277, 0.140653259715525},
    {0.949107912342759, 0.129484966168870, 0.063092092629979},
    {0.207784955007898, 0.0, 0.204432940075298},
    {0.586087235467691, 0.0, 0.169004726639267},
    {0.864864423359769, 0.0, 0.104790010322250},
    {0.991455371120813, 0.0, 0.022935322010529},
};

template <class Func>
double g7k15(const Func& f, double a, double b, double& err) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double f0 = f(center);
    double gauss = g7k15_nodes[0][1] * f0;
    double kronrod = g7k15_nodes[0][2] * f0;
    for (int i = 1; i < 8; ++i) {
        const double dx = half * g7k15_nodes[i][0];
        const double fi = f(center + dx) + f(center - dx);
        gauss += g7k15_nodes[i][1] * fi;
        kronrod += g7k15_nodes[i][2] * fi;
    }
    gauss *= half;
    kronrod *= half;
    const double diff = 200.0 * std::fabs(gauss - kronrod);
    err = diff * std::sqrt(diff);
    return kronrod;
}

}  // namespace detail

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    bool converged = true;
};

// Integrates f over [a, b], bisecting until each panel meets the relative
// or absolute tolerance.
template <class Func>
QuadratureResult integrate_adaptive(const Func& f, double a, double b,
                                    double rel_tol = 1e-12, double abs_tol = 1e-15,
                                    int max_intervals = 4096) {
    if (!(a <= b)) throw error("integrate_adaptive: need a <= b");
    if (a == b) return {0.0, 0.0, true};
    std::vector<std::pair<double, double>> stack{{a, b}};
    QuadratureResult out;
    int used = 0;
    while (!stack.empty()) {
        const auto [lo, hi] = stack.back();
        stack.pop_back();
        double err = 0.0;
        const double panel = detail::g7k15(f, lo, hi, err);
        if (err <= rel_tol * std::fabs(panel) || err <= abs_tol ||
            hi - lo <= abs_tol * std::max(1.0, std::fabs(lo))) {
            out.value += panel;
            out.error_estimate += err;
            continue;
        }
        if (++used >= max_intervals) {
            out.value += panel;
            out.error_estimate += err;
            out.converged = false;
            continue;
        }
        const double mid = 0.5 * (lo + hi);
        stack.emplace_back(lo, mid);
        stack.emplace_back(mid, hi);
    }
    return out;
}

}  // namespace curriculum_lab
