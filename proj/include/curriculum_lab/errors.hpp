// Typed error conditions shared by all modules.
#pragma once

#include <stdexcept>
#include <string>

namespace curriculum_lab {

// Base class for all library errors.
struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Vector lengths disagree.
struct dimension_error : error {
    using error::error;
};

// An operation precondition stated by the API contract was violated
// (e.g. hinge weights off the norm-A sphere).
struct contract_error : error {
    using error::error;
};

// w_t == w_bar: the polar frame has no zenith direction.
struct pole_degeneracy_error : error {
    using error::error;
};

// sin(theta) ~ 0: the two-axis hinge frame is undefined.
struct frame_degeneracy_error : error {
    using error::error;
};

// The projected hinge step hit the origin exactly.
struct degenerate_projection_error : error {
    using error::error;
};

// Conditioning request cannot be satisfied by the distribution
// (all candidate densities zero, value outside support, ...).
struct unsupported_conditioning_error : error {
    using error::error;
};

// Gradient check requested at a kink of the loss.
struct non_differentiable_error : error {
    using error::error;
};

// A counterexample search ran out of budget without a witness.
struct construction_failed_error : error {
    using error::error;
};

// Bad experiment configuration (CLI exit code 2).
struct config_error : error {
    using error::error;
};

}  // namespace curriculum_lab
