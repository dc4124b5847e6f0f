// Difficulty-conditioned example generators.
//
// Regression draws fix the global score psi (two equally likely label
// branches) and optionally the local score upsilon via an exact mixture
// over the four label-branch/angle regions, with the transverse component from
// the base distribution's exact conditional. Hinge draws pin coordinates
// in the frame spanned by w_bar and w_t: x1 = 1 - psi always, and x2 is
// either free (marginal law) or pinned by upsilon.
#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <utility>

#include "curriculum_lab/difficulty.hpp"
#include "curriculum_lab/distributions.hpp"
#include "curriculum_lab/geometry.hpp"
#include "curriculum_lab/rng.hpp"

namespace curriculum_lab {

// An example drawn under fixed difficulty scores, with provenance for
// stratified estimation.
struct ConditionedDraw {
    LabeledExample ex;
    double psi = 0.0;
    std::optional<double> upsilon;
    std::optional<RegionTag> region;        // regression (psi, upsilon) draws
    std::optional<bool> below_hinge_bound;  // hinge draws: x2 < B(psi)
    LabelBranch branch = LabelBranch::Plus;
};

inline double branch_label(LabelBranch branch, double base, double psi) {
    return branch == LabelBranch::Plus ? base + psi : base - psi;
}

// x ~ dist, y = x.w_bar +- psi with probability 1/2 each.
inline ConditionedDraw draw_given_psi_regression(const BaseDistribution& dist,
                                                 const ParamVector& w_bar, double psi,
                                                 RngStream& rng) {
    if (psi < 0.0) throw contract_error("draw_given_psi_regression: psi must be >= 0");
    ConditionedDraw draw;
    draw.ex.x = sample_base(dist, rng);
    draw.branch = rng.uniform01() < 0.5 ? LabelBranch::Plus : LabelBranch::Minus;
    draw.ex.y = branch_label(draw.branch, dot(draw.ex.x, w_bar), psi);
    draw.psi = psi;
    return draw;
}

// Prepared (psi, upsilon)-conditioned regression sampler. Region i is
// selected with probability f(u_i)/sum_j f(u_j) where f is the marginal
// density of u along the zenith w_bar - w_t; the drawn example satisfies
// x . (w_bar - w_t) == lambda*u_i exactly.
class PsiUpsilonRegressionSampler {
  public:
    PsiUpsilonRegressionSampler(const BaseDistribution& dist, ParamVector w_bar,
                                ParamVector w_t)
        : w_bar_(std::move(w_bar)), w_t_(std::move(w_t)), marginal_(make_marginal(dist)) {}

    double lambda() const { return lambda_; }
    const ParamVector& w_bar() const { return w_bar_; }
    const ParamVector& w_t() const { return w_t_; }
    const DirectionalMarginal& marginal() const { return marginal_; }

    ConditionedDraw draw(double psi, double upsilon, RngStream& rng) const {
        if (psi < 0.0 || upsilon < 0.0) {
            throw contract_error("PsiUpsilonRegressionSampler: scores must be >= 0");
        }
        constexpr std::array<RegionTag, 4> regions = {RegionTag::A1, RegionTag::A2,
                                                      RegionTag::A3, RegionTag::A4};
        std::array<double, 4> u{};
        std::array<double, 4> weights{};
        for (std::size_t i = 0; i < 4; ++i) {
            u[i] = region_scaled_u(regions[i], psi, upsilon) / lambda_;
            weights[i] = marginal_.weight(u[i]);
            if (!std::isfinite(weights[i])) {
                throw unsupported_conditioning_error(
                    "PsiUpsilonRegressionSampler: marginal density not finite");
            }
        }
        const std::size_t pick = rng.pick_weighted(weights);
        ConditionedDraw draw;
        draw.ex.x = marginal_.draw_conditional(u[pick], rng);
        draw.region = regions[pick];
        draw.branch = region_branch(regions[pick]);
        draw.ex.y = branch_label(draw.branch, dot(draw.ex.x, w_bar_), psi);
        draw.psi = psi;
        draw.upsilon = upsilon;
        return draw;
    }

  private:
    DirectionalMarginal make_marginal(const BaseDistribution& dist) {
        const ParamVector zenith = w_bar_ - w_t_;
        lambda_ = norm(zenith);
        if (lambda_ < 1e-12) {
            throw pole_degeneracy_error("PsiUpsilonRegressionSampler: w_t == w_bar");
        }
        return DirectionalMarginal(dist, zenith);
    }

    ParamVector w_bar_;
    ParamVector w_t_;
    double lambda_ = 0.0;
    DirectionalMarginal marginal_;
};

inline ConditionedDraw draw_given_psi_upsilon_regression(const BaseDistribution& dist,
                                                         const ParamVector& w_bar,
                                                         const ParamVector& w_t, double psi,
                                                         double upsilon, RngStream& rng) {
    return PsiUpsilonRegressionSampler(dist, w_bar, w_t).draw(psi, upsilon, rng);
}

// ---------------------------------------------------------------------------
// Hinge sampling. Works in an orthonormal frame whose first axis is w_bar
// and whose second axis completes the span of {w_bar, w_t}; examples are
// emitted in standard coordinates through that basis. Both hypotheses are
// unit vectors here (the norm-A generalization lives in the training path,
// where data rescaling makes the two problems identical).

class HingeSampler {
  public:
    // Canonical frame: w_bar = e1 in R^{2 + tail_dim}.
    HingeSampler(const HingeFrame& frame, ScalarLaw x2_law,
                 const std::optional<BaseDistribution>& tail = std::nullopt)
        : HingeSampler(frame, std::move(x2_law), tail, canonical_w_bar(tail_dim_of(tail))) {}

    // General frame anchored at an arbitrary unit w_bar.
    HingeSampler(const HingeFrame& frame, ScalarLaw x2_law,
                 std::optional<BaseDistribution> tail, const ParamVector& w_bar)
        : frame_(frame), x2_law_(std::move(x2_law)), tail_(std::move(tail)) {
        const std::size_t n = 2 + tail_dim_of(tail_);
        if (w_bar.size() != n) {
            throw dimension_error("HingeSampler: w_bar length must be 2 + tail dim");
        }
        if (std::fabs(norm(w_bar) - 1.0) > 1e-9) {
            throw contract_error("HingeSampler: w_bar must be unit norm");
        }
        basis_ = orthonormal_basis_with_first(w_bar);
        w_bar_ = basis_[0];
        w_t_ = scaled(basis_[0], frame_.cos_theta);
        axpy(frame_.sin_theta, basis_[1], w_t_);
    }

    const HingeFrame& frame() const { return frame_; }
    const ParamVector& w_bar() const { return w_bar_; }
    const ParamVector& w_t() const { return w_t_; }
    std::size_t dim() const { return basis_.size(); }

    double x2_of(const ParamVector& x) const { return dot(x, basis_[1]); }

    // x1 pinned to 1 - psi, x2 from the marginal law, tail from the tail
    // distribution; y = +1 (mirror negates the pair, leaving every score
    // and step unchanged).
    ConditionedDraw draw_psi(double psi, RngStream& rng, bool mirror = false) const {
        if (psi < 0.0) throw contract_error("HingeSampler: psi must be >= 0");
        return finish(psi, x2_law_.draw(rng), rng, mirror, std::nullopt);
    }

    // Additionally pins x2 = X(psi, upsilon) so the local score is upsilon.
    ConditionedDraw draw_psi_upsilon(double psi, double upsilon, RngStream& rng,
                                     bool mirror = false) const {
        if (psi < 0.0) throw contract_error("HingeSampler: psi must be >= 0");
        if (!(upsilon > 0.0)) {
            throw contract_error("HingeSampler: upsilon must be > 0 (upsilon == 0 pins "
                                 "no single point)");
        }
        return finish(psi, hinge_chi(psi, upsilon, frame_), rng, mirror, upsilon);
    }

  private:
    static std::size_t tail_dim_of(const std::optional<BaseDistribution>& tail) {
        return tail ? static_cast<std::size_t>(tail->dim) : 0;
    }

    static ParamVector canonical_w_bar(std::size_t tail_dim) {
        ParamVector w(2 + tail_dim, 0.0);
        w[0] = 1.0;
        return w;
    }

    ConditionedDraw finish(double psi, double x2, RngStream& rng, bool mirror,
                           std::optional<double> pinned_upsilon) const {
        ParamVector x = scaled(basis_[0], 1.0 - psi);
        axpy(x2, basis_[1], x);
        if (tail_) {
            const auto tail_coords = sample_features(*tail_, rng);
            for (std::size_t j = 0; j < tail_coords.size(); ++j) {
                axpy(tail_coords[j], basis_[j + 2], x);
            }
        }
        ConditionedDraw draw;
        draw.psi = psi;
        draw.below_hinge_bound = x2 < hinge_bound(psi, frame_);
        const double margin = (1.0 - psi) * frame_.cos_theta + x2 * frame_.sin_theta;
        draw.upsilon = pinned_upsilon ? *pinned_upsilon : std::max(1.0 - margin, 0.0);
        if (mirror) {
            draw.ex.x = scaled(x, -1.0);
            draw.ex.y = -1.0;
            draw.branch = LabelBranch::Minus;
        } else {
            draw.ex.x = std::move(x);
            draw.ex.y = 1.0;
            draw.branch = LabelBranch::Plus;
        }
        return draw;
    }

    HingeFrame frame_;
    ScalarLaw x2_law_;
    std::optional<BaseDistribution> tail_;
    std::vector<ParamVector> basis_;
    ParamVector w_bar_;
    ParamVector w_t_;
};

inline ConditionedDraw draw_given_psi_hinge(const ScalarLaw& x2_law,
                                            const std::optional<BaseDistribution>& tail,
                                            const HingeFrame& frame, double psi,
                                            RngStream& rng) {
    return HingeSampler(frame, x2_law, tail).draw_psi(psi, rng);
}

inline ConditionedDraw draw_given_psi_upsilon_hinge(const ScalarLaw& x2_law,
                                                    const std::optional<BaseDistribution>& tail,
                                                    const HingeFrame& frame, double psi,
                                                    double upsilon, RngStream& rng) {
    return HingeSampler(frame, x2_law, tail).draw_psi_upsilon(psi, upsilon, rng);
}

}  // namespace curriculum_lab
