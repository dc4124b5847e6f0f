// Core value types: parameter vectors and labeled examples.
//
// Convention used throughout: a data point lives in parameter space
// R^{d+1}, its feature part has length d and the bias coordinate 1 is
// appended LAST. Hypotheses are plain points of the same space.
#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "curriculum_lab/errors.hpp"

namespace curriculum_lab {

// A point in parameter space R^{d+1}.
using ParamVector = std::vector<double>;

inline double dot(const ParamVector& a, const ParamVector& b) {
    if (a.size() != b.size()) {
        throw dimension_error("dot: length mismatch (" + std::to_string(a.size()) +
                              " vs " + std::to_string(b.size()) + ")");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
    return sum;
}

inline double squared_norm(const ParamVector& v) { return dot(v, v); }

inline double norm(const ParamVector& v) { return std::sqrt(squared_norm(v)); }

inline ParamVector operator+(const ParamVector& a, const ParamVector& b) {
    if (a.size() != b.size()) throw dimension_error("vector add: length mismatch");
    ParamVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

inline ParamVector operator-(const ParamVector& a, const ParamVector& b) {
    if (a.size() != b.size()) throw dimension_error("vector sub: length mismatch");
    ParamVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

inline ParamVector scaled(const ParamVector& v, double c) {
    ParamVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = c * v[i];
    return out;
}

// out += c * v
inline void axpy(double c, const ParamVector& v, ParamVector& out) {
    if (v.size() != out.size()) throw dimension_error("axpy: length mismatch");
    for (std::size_t i = 0; i < v.size(); ++i) out[i] += c * v[i];
}

inline bool all_finite(const ParamVector& v) {
    for (double x : v) {
        if (!std::isfinite(x)) return false;
    }
    return true;
}

// Validates the ParamVector invariants: length >= 2, all entries finite.
inline void check_param_vector(const ParamVector& v, const char* who = "ParamVector") {
    if (v.size() < 2) {
        throw dimension_error(std::string(who) + ": need at least one feature plus bias");
    }
    if (!all_finite(v)) throw contract_error(std::string(who) + ": non-finite entry");
}

inline double cosine_similarity(const ParamVector& a, const ParamVector& b) {
    const double na = norm(a);
    const double nb = norm(b);
    if (na <= 0.0 || nb <= 0.0) throw contract_error("cosine_similarity: zero vector");
    return dot(a, b) / (na * nb);
}

// Orthonormal basis of R^n whose first column is the given (nonzero)
// direction; remaining columns come from Gram-Schmidt over the standard
// basis, skipping near-dependent candidates.
inline std::vector<ParamVector> orthonormal_basis_with_first(const ParamVector& first) {
    const std::size_t n = first.size();
    const double len = norm(first);
    if (!(len > 0.0)) throw contract_error("orthonormal_basis: zero direction");
    std::vector<ParamVector> basis;
    basis.reserve(n);
    basis.push_back(scaled(first, 1.0 / len));
    for (std::size_t axis = 0; axis < n && basis.size() < n; ++axis) {
        ParamVector candidate(n, 0.0);
        candidate[axis] = 1.0;
        for (const auto& b : basis) axpy(-dot(candidate, b), b, candidate);
        const double rem = norm(candidate);
        if (rem > 1e-8) basis.push_back(scaled(candidate, 1.0 / rem));
    }
    if (basis.size() != n) throw error("orthonormal_basis: failed to complete basis");
    return basis;
}

// Data point plus label. Regression labels are arbitrary reals, hinge
// labels are +-1. Examples built from feature vectors carry the bias
// coordinate 1 in the last slot; conditioned draws produced in a rotated
// hinge frame store frame coordinates instead (see samplers.hpp).
struct LabeledExample {
    ParamVector x;
    double y = 0.0;
};

inline ParamVector with_bias(std::vector<double> features) {
    features.push_back(1.0);
    return features;
}

inline LabeledExample make_regression_example(std::vector<double> features, double y) {
    LabeledExample ex{with_bias(std::move(features)), y};
    check_param_vector(ex.x, "LabeledExample.x");
    if (!std::isfinite(ex.y)) throw contract_error("LabeledExample: non-finite label");
    return ex;
}

inline LabeledExample make_hinge_example(std::vector<double> features, double y) {
    if (y != 1.0 && y != -1.0) throw contract_error("hinge label must be +-1");
    LabeledExample ex{with_bias(std::move(features)), y};
    check_param_vector(ex.x, "LabeledExample.x");
    return ex;
}

}  // namespace curriculum_lab
