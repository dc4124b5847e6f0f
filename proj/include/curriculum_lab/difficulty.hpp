// Global and local difficulty scores. The monotone transform is fixed per
// problem: square root of the loss for regression (so the score is the
// absolute residual), identity for the hinge.
#pragma once

#include <cmath>

#include "curriculum_lab/losses.hpp"

namespace curriculum_lab {

inline double score_transform(const Problem& problem, double loss_value) {
    return problem.kind == ProblemKind::Regression ? std::sqrt(loss_value) : loss_value;
}

// Score of an example under the optimal hypothesis. For synthetic data
// w_bar is the generator's planted hypothesis; scoring through an
// externally supplied strong hypothesis uses the same call.
inline double global_score(const Problem& problem, const LabeledExample& ex,
                           const ParamVector& w_bar) {
    return score_transform(problem, loss(problem, ex, w_bar));
}

// Same transform under the current hypothesis w_t.
inline double local_score(const Problem& problem, const LabeledExample& ex,
                          const ParamVector& w_t) {
    return score_transform(problem, loss(problem, ex, w_t));
}

}  // namespace curriculum_lab
