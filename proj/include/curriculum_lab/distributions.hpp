// Base data distributions with analytically known one-dimensional
// marginals, scalar laws for score spreads and hinge marginals, and the
// directional-marginal machinery (density of x.a and exact conditional
// draws given x.a = u) that difficulty-conditioned sampling relies on.
#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "curriculum_lab/errors.hpp"
#include "curriculum_lab/rng.hpp"
#include "curriculum_lab/stats.hpp"
#include "curriculum_lab/vecspace.hpp"

namespace curriculum_lab {

// ---------------------------------------------------------------------------
// Base feature distributions (the feature part of x; bias appended after).

enum class DistKind { StandardGaussian, UniformBall, UniformBox, PointMass };

struct WeightedAtom {
    std::vector<double> features;
    double weight = 1.0;
};

struct BaseDistribution {
    DistKind kind = DistKind::StandardGaussian;
    int dim = 1;              // feature dimension d
    double radius = 1.0;      // UniformBall
    double half_width = 1.0;  // UniformBox
    std::vector<WeightedAtom> atoms;

    static BaseDistribution standard_gaussian(int d) {
        if (d < 1) throw config_error("StandardGaussian: dim must be >= 1");
        BaseDistribution dist;
        dist.kind = DistKind::StandardGaussian;
        dist.dim = d;
        return dist;
    }

    static BaseDistribution uniform_ball(int d, double radius) {
        if (d < 1) throw config_error("UniformBall: dim must be >= 1");
        if (!(radius > 0.0)) throw config_error("UniformBall: radius must be > 0");
        BaseDistribution dist;
        dist.kind = DistKind::UniformBall;
        dist.dim = d;
        dist.radius = radius;
        return dist;
    }

    static BaseDistribution uniform_box(int d, double half_width) {
        if (d < 1) throw config_error("UniformBox: dim must be >= 1");
        if (!(half_width > 0.0)) throw config_error("UniformBox: half-width must be > 0");
        BaseDistribution dist;
        dist.kind = DistKind::UniformBox;
        dist.dim = d;
        dist.half_width = half_width;
        return dist;
    }

    static BaseDistribution point_mass(std::vector<WeightedAtom> atoms) {
        if (atoms.empty()) throw config_error("PointMass: no atoms");
        const std::size_t d = atoms.front().features.size();
        if (d == 0) throw config_error("PointMass: empty atom");
        double total = 0.0;
        for (const auto& atom : atoms) {
            if (atom.features.size() != d) throw config_error("PointMass: ragged atoms");
            if (!(atom.weight > 0.0)) throw config_error("PointMass: weights must be > 0");
            total += atom.weight;
        }
        if (std::fabs(total - 1.0) > 1e-9) {
            throw config_error("PointMass: weights must sum to 1");
        }
        for (auto& atom : atoms) atom.weight /= total;
        BaseDistribution dist;
        dist.kind = DistKind::PointMass;
        dist.dim = static_cast<int>(d);
        dist.atoms = std::move(atoms);
        return dist;
    }
};

// Uniform point in the unit ball of R^d, scaled by radius.
inline std::vector<double> draw_in_ball(int d, double radius, RngStream& rng) {
    std::vector<double> v(static_cast<std::size_t>(d));
    double sq = 0.0;
    for (auto& c : v) {
        c = rng.normal();
        sq += c * c;
    }
    const double len = std::sqrt(sq);
    const double rad =
        len > 0.0 ? radius * std::pow(rng.uniform01(), 1.0 / static_cast<double>(d)) : 0.0;
    for (auto& c : v) c *= len > 0.0 ? rad / len : 0.0;
    return v;
}

// Feature vector of length d (no bias coordinate).
inline std::vector<double> sample_features(const BaseDistribution& dist, RngStream& rng) {
    std::vector<double> features(static_cast<std::size_t>(dist.dim));
    switch (dist.kind) {
        case DistKind::StandardGaussian:
            for (auto& c : features) c = rng.normal();
            return features;
        case DistKind::UniformBall:
            return draw_in_ball(dist.dim, dist.radius, rng);
        case DistKind::UniformBox:
            for (auto& c : features) c = rng.uniform(-dist.half_width, dist.half_width);
            return features;
        case DistKind::PointMass: {
            std::vector<double> weights;
            weights.reserve(dist.atoms.size());
            for (const auto& atom : dist.atoms) weights.push_back(atom.weight);
            return dist.atoms[rng.pick_weighted(weights)].features;
        }
    }
    throw error("sample_features: unreachable");
}

// Point in parameter space: features with bias coordinate 1 appended.
inline ParamVector sample_base(const BaseDistribution& dist, RngStream& rng) {
    return with_bias(sample_features(dist, rng));
}

// ---------------------------------------------------------------------------
// One-dimensional laws (hinge x2 marginals, label-noise and score spreads).

enum class ScalarKind { Gaussian, Uniform, PointMass, HalfGaussian };

struct ScalarLaw {
    ScalarKind kind = ScalarKind::Gaussian;
    double mu = 0.0, sigma = 1.0;  // Gaussian / HalfGaussian (mu unused for half)
    double lo = 0.0, hi = 1.0;     // Uniform
    double value = 0.0;            // PointMass

    static ScalarLaw gaussian(double mu, double sigma) {
        if (!(sigma > 0.0)) throw config_error("ScalarLaw: sigma must be > 0");
        ScalarLaw law;
        law.kind = ScalarKind::Gaussian;
        law.mu = mu;
        law.sigma = sigma;
        return law;
    }

    static ScalarLaw uniform(double lo, double hi) {
        if (!(lo < hi)) throw config_error("ScalarLaw: need lo < hi");
        ScalarLaw law;
        law.kind = ScalarKind::Uniform;
        law.lo = lo;
        law.hi = hi;
        return law;
    }

    static ScalarLaw point_mass(double value) {
        ScalarLaw law;
        law.kind = ScalarKind::PointMass;
        law.value = value;
        return law;
    }

    static ScalarLaw half_gaussian(double sigma) {
        if (!(sigma > 0.0)) throw config_error("ScalarLaw: sigma must be > 0");
        ScalarLaw law;
        law.kind = ScalarKind::HalfGaussian;
        law.sigma = sigma;
        return law;
    }

    bool continuous() const { return kind != ScalarKind::PointMass; }

    double density(double x) const {
        switch (kind) {
            case ScalarKind::Gaussian:
                return normal_pdf((x - mu) / sigma) / sigma;
            case ScalarKind::Uniform:
                return (x >= lo && x <= hi) ? 1.0 / (hi - lo) : 0.0;
            case ScalarKind::HalfGaussian:
                return x >= 0.0 ? 2.0 * normal_pdf(x / sigma) / sigma : 0.0;
            case ScalarKind::PointMass:
                throw unsupported_conditioning_error("ScalarLaw: point mass has no density");
        }
        throw error("ScalarLaw::density: unreachable");
    }

    double cdf(double x) const {
        switch (kind) {
            case ScalarKind::Gaussian:
                return normal_cdf((x - mu) / sigma);
            case ScalarKind::Uniform:
                if (x <= lo) return 0.0;
                if (x >= hi) return 1.0;
                return (x - lo) / (hi - lo);
            case ScalarKind::HalfGaussian:
                return x <= 0.0 ? 0.0 : 2.0 * normal_cdf(x / sigma) - 1.0;
            case ScalarKind::PointMass:
                return x >= value ? 1.0 : 0.0;
        }
        throw error("ScalarLaw::cdf: unreachable");
    }

    double draw(RngStream& rng) const {
        switch (kind) {
            case ScalarKind::Gaussian:
                return mu + sigma * rng.normal();
            case ScalarKind::Uniform:
                return rng.uniform(lo, hi);
            case ScalarKind::HalfGaussian:
                return sigma * std::fabs(rng.normal());
            case ScalarKind::PointMass:
                return value;
        }
        throw error("ScalarLaw::draw: unreachable");
    }

    double mean() const {
        switch (kind) {
            case ScalarKind::Gaussian:
                return mu;
            case ScalarKind::Uniform:
                return 0.5 * (lo + hi);
            case ScalarKind::HalfGaussian:
                return sigma * std::sqrt(2.0 / std::numbers::pi);
            case ScalarKind::PointMass:
                return value;
        }
        throw error("ScalarLaw::mean: unreachable");
    }

    // Point below which the tail mass is provably < eps; analytic per family
    // so quadrature truncation stays deterministic.
    double lower_tail_bound(double eps) const {
        switch (kind) {
            case ScalarKind::Gaussian: {
                // Phi(-8) ~ 6e-17, far below any eps used here.
                double z = 8.0;
                while (normal_cdf(-z) >= eps) z += 1.0;
                return mu - z * sigma;
            }
            case ScalarKind::Uniform:
                return lo;
            case ScalarKind::HalfGaussian:
                return 0.0;
            case ScalarKind::PointMass:
                return value;
        }
        throw error("ScalarLaw::lower_tail_bound: unreachable");
    }
};

// ---------------------------------------------------------------------------
// Marginal of u = x.a for a unit direction a in R^{d+1}, x = [features, 1].
//
// Decompose a = [a_f, a_b]. Then u = s*t + a_b where s = |a_f| and t is the
// coordinate of the features along a_f. Supported exactly:
//   StandardGaussian  any direction
//   UniformBall       any direction
//   UniformBox        a_f axis-aligned
//   PointMass         discrete masses
// weight() is a density for continuous families and an atom mass for
// point masses; draw_conditional() produces a full x with x.a == u.
class DirectionalMarginal {
  public:
    DirectionalMarginal(BaseDistribution dist, const ParamVector& direction)
        : dist_(std::move(dist)) {
        if (direction.size() != static_cast<std::size_t>(dist_.dim) + 1) {
            throw dimension_error("DirectionalMarginal: direction length != d+1");
        }
        const double len = norm(direction);
        if (!(len > 0.0)) throw contract_error("DirectionalMarginal: zero direction");
        ParamVector unit = scaled(direction, 1.0 / len);
        bias_component_ = unit.back();
        feature_dir_.assign(unit.begin(), unit.end() - 1);
        scale_ = norm(feature_dir_);
        if (dist_.kind != DistKind::PointMass && scale_ <= 1e-12) {
            throw unsupported_conditioning_error(
                "DirectionalMarginal: direction has no feature component");
        }
        if (scale_ > 0.0) feature_unit_ = scaled(feature_dir_, 1.0 / scale_);
        switch (dist_.kind) {
            case DistKind::UniformBox: {
                // require an axis-aligned feature direction
                std::size_t live = 0;
                for (std::size_t i = 0; i < feature_unit_.size(); ++i) {
                    if (std::fabs(feature_unit_[i]) > 1e-12) {
                        axis_ = i;
                        ++live;
                    }
                }
                if (live != 1 || std::fabs(std::fabs(feature_unit_[axis_]) - 1.0) > 1e-12) {
                    throw unsupported_conditioning_error(
                        "UniformBox marginal needs an axis-aligned direction");
                }
                axis_sign_ = feature_unit_[axis_] > 0.0 ? 1.0 : -1.0;
                break;
            }
            case DistKind::UniformBall:
                feature_basis_ = orthonormal_basis_with_first(feature_unit_);
                break;
            default:
                break;
        }
    }

    bool discrete() const { return dist_.kind == DistKind::PointMass; }

    // Density (continuous families) or atom mass (point mass) of u.
    double weight(double u) const {
        switch (dist_.kind) {
            case DistKind::StandardGaussian:
                return normal_pdf(to_t(u)) / scale_;
            case DistKind::UniformBox:
                return std::fabs(to_t(u)) <= dist_.half_width
                           ? 1.0 / (2.0 * dist_.half_width * scale_)
                           : 0.0;
            case DistKind::UniformBall: {
                const double t = to_t(u);
                const double r = dist_.radius;
                if (std::fabs(t) > r) return 0.0;
                const double d = static_cast<double>(dist_.dim);
                const double log_beta = std::lgamma(0.5) + std::lgamma((d + 1.0) / 2.0) -
                                        std::lgamma(d / 2.0 + 1.0);
                const double base = 1.0 - (t / r) * (t / r);
                return std::pow(base, (d - 1.0) / 2.0) / (r * std::exp(log_beta)) / scale_;
            }
            case DistKind::PointMass: {
                double mass = 0.0;
                for (const auto& atom : dist_.atoms) {
                    if (std::fabs(atom_u(atom) - u) <= 1e-9) mass += atom.weight;
                }
                return mass;
            }
        }
        throw error("DirectionalMarginal::weight: unreachable");
    }

    // Draw x = [features, 1] from the base distribution conditioned on x.a == u.
    ParamVector draw_conditional(double u, RngStream& rng) const {
        switch (dist_.kind) {
            case DistKind::StandardGaussian: {
                const double t = to_t(u);
                std::vector<double> g(feature_unit_.size());
                for (auto& c : g) c = rng.normal();
                const double along = dot(g, feature_unit_);
                axpy(t - along, feature_unit_, g);
                return with_bias(std::move(g));
            }
            case DistKind::UniformBox: {
                const double t = to_t(u);
                if (std::fabs(t) > dist_.half_width) {
                    throw unsupported_conditioning_error("UniformBox: u outside support");
                }
                std::vector<double> features(static_cast<std::size_t>(dist_.dim));
                for (std::size_t i = 0; i < features.size(); ++i) {
                    features[i] = i == axis_ ? axis_sign_ * t
                                             : rng.uniform(-dist_.half_width, dist_.half_width);
                }
                return with_bias(std::move(features));
            }
            case DistKind::UniformBall: {
                const double t = to_t(u);
                if (std::fabs(t) > dist_.radius) {
                    throw unsupported_conditioning_error("UniformBall: u outside support");
                }
                const double rho = std::sqrt(std::max(0.0, dist_.radius * dist_.radius - t * t));
                std::vector<double> features = scaled(feature_unit_, t);
                if (dist_.dim > 1) {
                    auto transverse = draw_in_ball(dist_.dim - 1, rho, rng);
                    for (std::size_t j = 0; j + 1 < feature_basis_.size(); ++j) {
                        axpy(transverse[j], feature_basis_[j + 1], features);
                    }
                }
                return with_bias(std::move(features));
            }
            case DistKind::PointMass: {
                std::vector<double> weights;
                std::vector<std::size_t> matching;
                for (std::size_t i = 0; i < dist_.atoms.size(); ++i) {
                    if (std::fabs(atom_u(dist_.atoms[i]) - u) <= 1e-9) {
                        matching.push_back(i);
                        weights.push_back(dist_.atoms[i].weight);
                    }
                }
                if (matching.empty()) {
                    throw unsupported_conditioning_error("PointMass: no atom at requested u");
                }
                return with_bias(dist_.atoms[matching[rng.pick_weighted(weights)]].features);
            }
        }
        throw error("DirectionalMarginal::draw_conditional: unreachable");
    }

  private:
    double to_t(double u) const { return (u - bias_component_) / scale_; }

    double atom_u(const WeightedAtom& atom) const {
        double u = bias_component_;
        for (std::size_t i = 0; i < atom.features.size(); ++i) {
            u += atom.features[i] * feature_dir_[i];
        }
        return u;
    }

    BaseDistribution dist_;
    std::vector<double> feature_dir_;   // a_f (not normalized)
    std::vector<double> feature_unit_;  // a_f / |a_f|
    double scale_ = 1.0;                // |a_f|
    double bias_component_ = 0.0;       // a_b
    std::size_t axis_ = 0;              // UniformBox
    double axis_sign_ = 1.0;
    std::vector<ParamVector> feature_basis_;  // UniformBall
};

}  // namespace curriculum_lab
