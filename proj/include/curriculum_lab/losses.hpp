// Loss functions and single-example SGD updates for the two problems:
// least-squares regression and norm-constrained hinge classification
// with a projected gradient step.
#pragma once

#include <cmath>
#include <string>

#include "curriculum_lab/errors.hpp"
#include "curriculum_lab/vecspace.hpp"

namespace curriculum_lab {

enum class ProblemKind { Regression, HingeClassification };

struct Problem {
    ProblemKind kind = ProblemKind::Regression;
    double eta = 0.01;
    double norm_bound = 1.0;  // hinge constraint |w| == A

    static Problem regression(double eta) {
        if (!(eta > 0.0)) throw config_error("Problem: eta must be > 0");
        return Problem{ProblemKind::Regression, eta, 1.0};
    }

    static Problem hinge(double eta, double norm_bound = 1.0) {
        if (!(eta > 0.0)) throw config_error("Problem: eta must be > 0");
        if (!(norm_bound > 0.0)) throw config_error("Problem: norm bound must be > 0");
        return Problem{ProblemKind::HingeClassification, eta, norm_bound};
    }
};

inline double squared_residual(const LabeledExample& ex, const ParamVector& w) {
    const double resid = dot(ex.x, w) - ex.y;
    return resid * resid;
}

inline double hinge_value(const LabeledExample& ex, const ParamVector& w) {
    return std::max(1.0 - dot(ex.x, w) * ex.y, 0.0);
}

inline void require_on_sphere(const ParamVector& w, double target, const char* who) {
    if (std::fabs(norm(w) - target) > 1e-9) {
        throw contract_error(std::string(who) + ": |w| must equal " +
                             std::to_string(target) + " within 1e-9");
    }
}

inline double loss(const Problem& problem, const LabeledExample& ex, const ParamVector& w) {
    switch (problem.kind) {
        case ProblemKind::Regression:
            return squared_residual(ex, w);
        case ProblemKind::HingeClassification:
            require_on_sphere(w, problem.norm_bound, "hinge loss");
            return hinge_value(ex, w);
    }
    throw error("loss: unreachable");
}

// w' = w - 2*eta*(x.w - y)*x
inline ParamVector sgd_step_regression(const LabeledExample& ex, const ParamVector& w,
                                       double eta) {
    const double resid = dot(ex.x, w) - ex.y;
    ParamVector out = w;
    axpy(-2.0 * eta * resid, ex.x, out);
    return out;
}

// Projected subgradient step: s = x*y when (x.w)y <= 1 (equality included),
// s = 0 otherwise; then renormalize to |w'| == A.
inline ParamVector sgd_step_hinge(const LabeledExample& ex, const ParamVector& w, double eta,
                                  double norm_bound = 1.0) {
    require_on_sphere(w, norm_bound, "sgd_step_hinge");
    ParamVector out = w;
    if (dot(ex.x, w) * ex.y <= 1.0) axpy(eta * ex.y, ex.x, out);
    const double len = norm(out);
    if (len == 0.0) {
        throw degenerate_projection_error("sgd_step_hinge: w + eta*s vanished");
    }
    for (auto& c : out) c *= norm_bound / len;
    return out;
}

// Analytic loss gradient; for the hinge this is the subgradient away from
// the margin kink.
inline ParamVector loss_gradient(const Problem& problem, const LabeledExample& ex,
                                 const ParamVector& w) {
    switch (problem.kind) {
        case ProblemKind::Regression:
            return scaled(ex.x, 2.0 * (dot(ex.x, w) - ex.y));
        case ProblemKind::HingeClassification:
            if (dot(ex.x, w) * ex.y < 1.0) return scaled(ex.x, -ex.y);
            return ParamVector(w.size(), 0.0);
    }
    throw error("loss_gradient: unreachable");
}

// Central finite differences against the analytic gradient; returns the
// max relative error over coordinates. Hinge inputs on the margin kink
// are rejected because the loss is non-differentiable there.
inline double grad_check(const Problem& problem, const LabeledExample& ex,
                         const ParamVector& w) {
    const auto raw_loss = [&](const ParamVector& point) {
        return problem.kind == ProblemKind::Regression ? squared_residual(ex, point)
                                                       : hinge_value(ex, point);
    };
    if (problem.kind == ProblemKind::HingeClassification &&
        std::fabs(1.0 - dot(ex.x, w) * ex.y) <= 1e-6) {
        throw non_differentiable_error("grad_check: point on the hinge margin");
    }
    const ParamVector analytic = loss_gradient(problem, ex, w);
    const double step = 1e-6 * std::max(1.0, norm(w));
    double worst = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        ParamVector hi = w, lo = w;
        hi[i] += step;
        lo[i] -= step;
        const double fd = (raw_loss(hi) - raw_loss(lo)) / (2.0 * step);
        const double denom = std::max({1.0, std::fabs(analytic[i]), std::fabs(fd)});
        worst = std::max(worst, std::fabs(analytic[i] - fd) / denom);
    }
    return worst;
}

}  // namespace curriculum_lab
