// Parameter-space geometry: projection onto the zero-gradient hyperplane,
// polar decomposition about the pole w_bar, the splitting angle beta, the
// four-region split of the local score, and the two-axis hinge frame with
// its x2 threshold.
#pragma once

#include <algorithm>
#include <cmath>

#include "curriculum_lab/errors.hpp"
#include "curriculum_lab/vecspace.hpp"

namespace curriculum_lab {

// Hyperspherical description of a data point x seen from the pole w_bar
// with zenith direction w_bar - w_t. The residual polar angles are always
// marginalized analytically and carry no representation.
struct PolarDecomposition {
    double r = 0.0;          // |x|
    double cos_theta = 0.0;  // angle against the zenith
    double lambda = 0.0;     // |w_bar - w_t|
};

// z_bar = w_bar - ((x.w_bar - y)/|x|^2) x, the projection of w_bar onto
// the hyperplane {w : x.w = y} where the regression gradient vanishes.
inline ParamVector project_onto_omega(const ParamVector& w_bar, const LabeledExample& ex) {
    const double xx = squared_norm(ex.x);
    if (!(xx > 0.0)) throw contract_error("project_onto_omega: zero data vector");
    ParamVector out = w_bar;
    axpy(-(dot(ex.x, w_bar) - ex.y) / xx, ex.x, out);
    return out;
}

inline PolarDecomposition polar_decompose(const ParamVector& x, const ParamVector& w_t,
                                          const ParamVector& w_bar) {
    const ParamVector zenith = w_bar - w_t;
    const double lambda = norm(zenith);
    if (lambda < 1e-12) {
        throw pole_degeneracy_error("polar_decompose: w_t == w_bar, zenith undefined");
    }
    const double r = norm(x);
    if (!(r > 0.0)) throw contract_error("polar_decompose: zero data vector");
    double cos_theta = dot(x, zenith) / (r * lambda);
    cos_theta = std::clamp(cos_theta, -1.0, 1.0);
    return PolarDecomposition{r, cos_theta, lambda};
}

// beta = arccos(min(psi/(lambda*r), 1)), in [0, pi/2].
inline double beta_angle(double r, double psi, double lambda) {
    if (!(r > 0.0) || !(lambda > 0.0) || psi < 0.0) {
        throw contract_error("beta_angle: need r > 0, lambda > 0, psi >= 0");
    }
    return std::acos(std::min(psi / (lambda * r), 1.0));
}

// ---------------------------------------------------------------------------
// The four (label-branch x angle-range) regions tying the local score to
// u = r cos(theta).

enum class LabelBranch { Plus, Minus };  // y = x.w_bar + psi  /  y = x.w_bar - psi

enum class RegionTag { A1, A2, A3, A4 };

inline const char* to_string(RegionTag tag) {
    switch (tag) {
        case RegionTag::A1: return "A1";
        case RegionTag::A2: return "A2";
        case RegionTag::A3: return "A3";
        case RegionTag::A4: return "A4";
    }
    return "?";
}

inline LabelBranch region_branch(RegionTag tag) {
    return (tag == RegionTag::A1 || tag == RegionTag::A2) ? LabelBranch::Plus
                                                          : LabelBranch::Minus;
}

// lambda*u implied by (region, psi, upsilon).
inline double region_scaled_u(RegionTag tag, double psi, double upsilon) {
    switch (tag) {
        case RegionTag::A1: return -psi + upsilon;
        case RegionTag::A2: return -psi - upsilon;
        case RegionTag::A3: return psi + upsilon;
        case RegionTag::A4: return psi - upsilon;
    }
    throw error("region_scaled_u: unreachable");
}

struct RegionResult {
    RegionTag region;
    double upsilon;  // implied local score, always >= 0
};

// Classifies u = r cos(theta) into the branch's two regions; boundary ties
// go to the region listed first (A1 over A2, A3 over A4).
inline RegionResult region_classify(double u, double psi, double lambda, LabelBranch branch) {
    if (!(lambda > 0.0)) throw pole_degeneracy_error("region_classify: lambda must be > 0");
    if (psi < 0.0) throw contract_error("region_classify: psi must be >= 0");
    const double lu = lambda * u;
    if (branch == LabelBranch::Plus) {
        if (lu >= -psi) return {RegionTag::A1, lu + psi};
        return {RegionTag::A2, -lu - psi};
    }
    if (lu >= psi) return {RegionTag::A3, lu - psi};
    return {RegionTag::A4, psi - lu};
}

// ---------------------------------------------------------------------------
// Hinge frame: the plane spanned by w_bar and w_t, described by the angle
// between them. Valid only away from sin(theta) == 0.

struct HingeFrame {
    double cos_theta = 0.0;
    double sin_theta = 1.0;
};

inline HingeFrame make_hinge_frame(double cos_theta, double sin_theta) {
    if (std::fabs(cos_theta * cos_theta + sin_theta * sin_theta - 1.0) > 1e-12) {
        throw contract_error("HingeFrame: cos^2 + sin^2 must be 1");
    }
    if (!(sin_theta > 1e-9)) {
        throw frame_degeneracy_error("HingeFrame: sin(theta) too small, frame undefined");
    }
    return HingeFrame{cos_theta, sin_theta};
}

inline HingeFrame hinge_frame_from_angle(double theta) {
    return make_hinge_frame(std::cos(theta), std::sin(theta));
}

// B(psi) = (psi-1)/tan(theta) + 1/sin(theta). On the fixed-psi hyperplane,
// x.w_t < 1 iff x2 < B(psi).
inline double hinge_bound(double psi, const HingeFrame& frame) {
    return (psi - 1.0) * frame.cos_theta / frame.sin_theta + 1.0 / frame.sin_theta;
}

// X(psi, upsilon) = (psi-1)/tan(theta) + (1-upsilon)/sin(theta): the x2
// coordinate pinned by fixing both scores; X(psi, 0) == B(psi).
inline double hinge_chi(double psi, double upsilon, const HingeFrame& frame) {
    if (upsilon < 0.0) throw contract_error("hinge_chi: upsilon must be >= 0");
    return (psi - 1.0) * frame.cos_theta / frame.sin_theta +
           (1.0 - upsilon) / frame.sin_theta;
}

}  // namespace curriculum_lab
