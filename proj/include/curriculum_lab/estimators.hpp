// Expected one-step convergence-rate machinery: Monte Carlo estimators,
// closed-form evaluators with their analytic derivatives, the normalized
// four-point density difference, quadrature for the hinge integral,
// moment oracles, and the monotonicity probe.
//
// Monte Carlo runs are split into fixed-size chunks, each owning its own
// rng stream; chunk accumulators merge in chunk order, so results are
// bit-identical for any worker count or scheduling.
#pragma once

#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <thread>
#include <vector>

#include "curriculum_lab/losses.hpp"
#include "curriculum_lab/quadrature.hpp"
#include "curriculum_lab/samplers.hpp"
#include "curriculum_lab/stats.hpp"

namespace curriculum_lab {

// ---------------------------------------------------------------------------
// Monte Carlo engine.

struct McOptions {
    std::uint64_t n = 100000;
    std::uint64_t seed = 1;
    std::uint64_t stream_base = 0;  // first chunk stream id
    int jobs = 1;
    std::uint64_t chunk_size = 8192;
    bool stratify_branches = true;  // regression: average both label branches per draw
};

// Runs opt.n trials of trial(rng, values) filling K statistics.
template <std::size_t K, class TrialFn>
std::array<RunningStat, K> mc_accumulate(const McOptions& opt, const TrialFn& trial) {
    if (opt.n == 0) throw contract_error("mc_accumulate: need n >= 1");
    const std::uint64_t chunk = std::max<std::uint64_t>(1, opt.chunk_size);
    const std::uint64_t n_chunks = (opt.n + chunk - 1) / chunk;
    std::vector<std::array<RunningStat, K>> per_chunk(n_chunks);

    const auto run_chunk = [&](std::uint64_t c) {
        RngStream rng(opt.seed, opt.stream_base + c);
        const std::uint64_t count = std::min(chunk, opt.n - c * chunk);
        std::array<double, K> values{};
        for (std::uint64_t i = 0; i < count; ++i) {
            trial(rng, values);
            for (std::size_t k = 0; k < K; ++k) per_chunk[c][k].add(values[k]);
        }
    };

    const int jobs = std::max(1, opt.jobs);
    if (jobs == 1 || n_chunks == 1) {
        for (std::uint64_t c = 0; c < n_chunks; ++c) run_chunk(c);
    } else {
        std::atomic<std::uint64_t> next{0};
        std::vector<std::thread> workers;
        const int spawn = static_cast<int>(
            std::min<std::uint64_t>(static_cast<std::uint64_t>(jobs), n_chunks));
        workers.reserve(static_cast<std::size_t>(spawn));
        for (int t = 0; t < spawn; ++t) {
            workers.emplace_back([&] {
                for (std::uint64_t c = next.fetch_add(1); c < n_chunks;
                     c = next.fetch_add(1)) {
                    run_chunk(c);
                }
            });
        }
        for (auto& w : workers) w.join();
    }

    std::array<RunningStat, K> merged{};
    for (const auto& stats : per_chunk) {
        for (std::size_t k = 0; k < K; ++k) merged[k].merge(stats[k]);
    }
    return merged;
}

template <class TrialFn>
RateEstimate mc_estimate(const McOptions& opt, const TrialFn& trial) {
    const auto stats = mc_accumulate<1>(
        opt, [&](RngStream& rng, std::array<double, 1>& out) { out[0] = trial(rng); });
    return RateEstimate{stats[0].mean, stats[0].std_error(), stats[0].n,
                        EstimateMethod::MonteCarlo};
}

// ---------------------------------------------------------------------------
// Regression: closed form and Monte Carlo for the squared-distance
// decrement at fixed global score.

// The three expectations of the closed form: E[r^2], E[r^2 cos^2],
// E[r^4 cos^2], taken over the data distribution in the polar frame.
struct DistributionMoments {
    double m_r2 = 0.0;
    double m_r2c2 = 0.0;
    double m_r4c2 = 0.0;
};

struct MomentEstimate {
    DistributionMoments value;
    DistributionMoments std_error;
    std::uint64_t n = 0;
};

// Step-size threshold under which the closed-form rate increases with the
// hypothesis distance.
inline double eta_bound(const DistributionMoments& m) {
    if (!(m.m_r4c2 > 0.0)) {
        throw contract_error("eta_bound: E[r^4 cos^2] must be positive");
    }
    return m.m_r2c2 / m.m_r4c2;
}

// Delta(psi) = 4(eta lambda^2 E[r^2cos^2] - eta^2 lambda^2 E[r^4cos^2]
//              - eta^2 psi^2 E[r^2]); exact for the 2*eta residual step.
inline double closed_delta_regression(const DistributionMoments& m, double psi,
                                      double lambda, double eta) {
    return 4.0 * (eta * lambda * lambda * m.m_r2c2 -
                  eta * eta * lambda * lambda * m.m_r4c2 - eta * eta * psi * psi * m.m_r2);
}

inline double closed_delta_regression_dpsi(const DistributionMoments& m, double psi,
                                           double eta) {
    return -8.0 * eta * eta * m.m_r2 * psi;
}

inline double closed_delta_regression_dlambda(const DistributionMoments& m, double lambda,
                                              double eta) {
    return 8.0 * eta * lambda * (m.m_r2c2 - eta * m.m_r4c2);
}

// One regression step from w_t on the drawn example; returns the
// squared-distance decrement toward w_bar.
inline double squared_distance_decrement(const LabeledExample& ex, const ParamVector& w_t,
                                         const ParamVector& w_bar, double eta,
                                         double dist_sq_before) {
    const ParamVector stepped = sgd_step_regression(ex, w_t, eta);
    return dist_sq_before - squared_norm(stepped - w_bar);
}

inline RateEstimate mc_delta_regression(const BaseDistribution& dist,
                                        const ParamVector& w_bar, const ParamVector& w_t,
                                        double psi, double eta, const McOptions& opt) {
    if (psi < 0.0) throw contract_error("mc_delta_regression: psi must be >= 0");
    if (opt.n < 2) throw contract_error("mc_delta_regression: need n >= 2");
    const double lambda = norm(w_bar - w_t);
    if (lambda < 1e-12) throw pole_degeneracy_error("mc_delta_regression: w_t == w_bar");
    const double before = lambda * lambda;
    return mc_estimate(opt, [&](RngStream& rng) {
        LabeledExample ex;
        ex.x = sample_base(dist, rng);
        const double base = dot(ex.x, w_bar);
        if (opt.stratify_branches) {
            ex.y = base + psi;
            const double plus = squared_distance_decrement(ex, w_t, w_bar, eta, before);
            ex.y = base - psi;
            const double minus = squared_distance_decrement(ex, w_t, w_bar, eta, before);
            return 0.5 * (plus + minus);
        }
        ex.y = branch_label(rng.uniform01() < 0.5 ? LabelBranch::Plus : LabelBranch::Minus,
                            base, psi);
        return squared_distance_decrement(ex, w_t, w_bar, eta, before);
    });
}

// Plug-in moment estimates; exact (zero standard error) for point masses.
inline MomentEstimate moment_oracle(const BaseDistribution& dist, const ParamVector& w_bar,
                                    const ParamVector& w_t, const McOptions& opt) {
    const ParamVector zenith = w_bar - w_t;
    const double lambda = norm(zenith);
    if (lambda < 1e-12) throw pole_degeneracy_error("moment_oracle: w_t == w_bar");
    const ParamVector unit = scaled(zenith, 1.0 / lambda);

    if (dist.kind == DistKind::PointMass) {
        MomentEstimate out;
        for (const auto& atom : dist.atoms) {
            const ParamVector x = with_bias(atom.features);
            const double r2 = squared_norm(x);
            const double u = dot(x, unit);
            out.value.m_r2 += atom.weight * r2;
            out.value.m_r2c2 += atom.weight * u * u;
            out.value.m_r4c2 += atom.weight * r2 * u * u;
        }
        out.n = dist.atoms.size();
        return out;
    }

    const auto stats = mc_accumulate<3>(opt, [&](RngStream& rng, std::array<double, 3>& v) {
        const ParamVector x = sample_base(dist, rng);
        const double r2 = squared_norm(x);
        const double u = dot(x, unit);
        v = {r2, u * u, r2 * u * u};
    });
    MomentEstimate out;
    out.value = {stats[0].mean, stats[1].mean, stats[2].mean};
    out.std_error = {stats[0].std_error(), stats[1].std_error(), stats[2].std_error()};
    out.n = stats[0].n;
    return out;
}

// Exact moments for standard Gaussian features with a zenith aligned to a
// feature axis: E[r^2] = d+1, E[r^2cos^2] = 1, E[r^4cos^2] = d+3.
inline DistributionMoments gaussian_axis_moments(int d) {
    return DistributionMoments{static_cast<double>(d) + 1.0, 1.0,
                               static_cast<double>(d) + 3.0};
}

// ---------------------------------------------------------------------------
// Regression at fixed (psi, upsilon): the four-point density functional
// and the first-order closed form.

// (f(a)-f(b)-f(c)+f(d)) / (f(a)+f(b)+f(c)+f(d)) at the four points
// (+-psi +- upsilon)/lambda; always in [-1, 1].
inline double nabla(const std::function<double(double)>& density, double psi, double upsilon,
                    double lambda) {
    if (!(lambda > 0.0)) throw pole_degeneracy_error("nabla: lambda must be > 0");
    const double fa = density((psi + upsilon) / lambda);
    const double fb = density((psi - upsilon) / lambda);
    const double fc = density((-psi + upsilon) / lambda);
    const double fd = density((-psi - upsilon) / lambda);
    const double total = fa + fb + fc + fd;
    if (!(total > 0.0)) {
        throw unsupported_conditioning_error("nabla: all four densities are zero");
    }
    return (fa - fb - fc + fd) / total;
}

// Delta(psi, upsilon) = 4 eta (psi^2 + upsilon^2 + 2 psi upsilon nabla),
// first order in eta.
inline double closed_delta_regression_local(double psi, double upsilon, double eta,
                                            double nabla_value) {
    if (std::fabs(nabla_value) > 1.0 + 1e-12) {
        throw contract_error("closed_delta_regression_local: |nabla| must be <= 1");
    }
    return 4.0 * eta * (psi * psi + upsilon * upsilon + 2.0 * psi * upsilon * nabla_value);
}

inline RateEstimate mc_delta_regression_local(const PsiUpsilonRegressionSampler& sampler,
                                              double psi, double upsilon, double eta,
                                              const McOptions& opt) {
    const double before = sampler.lambda() * sampler.lambda();
    return mc_estimate(opt, [&](RngStream& rng) {
        const ConditionedDraw draw = sampler.draw(psi, upsilon, rng);
        return squared_distance_decrement(draw.ex, sampler.w_t(), sampler.w_bar(), eta,
                                          before);
    });
}

// ---------------------------------------------------------------------------
// Hinge: cosine-similarity increment of one projected step.

// Exact increment cos(w_{t+1}, w_bar) - cos(w_t, w_bar) for unit-norm
// hypotheses; the projection drops out of the cosine.
inline double hinge_cosine_increment(const LabeledExample& ex, const ParamVector& w_t,
                                     const ParamVector& w_bar, double eta) {
    if (dot(ex.x, w_t) * ex.y > 1.0) return 0.0;
    const double cos_before = dot(w_t, w_bar);
    const double along_bar = cos_before + eta * ex.y * dot(ex.x, w_bar);
    const double norm_sq =
        1.0 + 2.0 * eta * ex.y * dot(ex.x, w_t) + eta * eta * squared_norm(ex.x);
    if (!(norm_sq > 0.0)) {
        throw degenerate_projection_error("hinge_cosine_increment: step hit the origin");
    }
    return along_bar / std::sqrt(norm_sq) - cos_before;
}

// First-order integrand of the hinge rate: (1-psi) sin^2 - x2 sin cos.
inline double hinge_first_order_integrand(double x2, double psi, const HingeFrame& frame) {
    return (1.0 - psi) * frame.sin_theta * frame.sin_theta -
           x2 * frame.sin_theta * frame.cos_theta;
}

inline RateEstimate mc_delta_hinge(const HingeSampler& sampler, double psi, double eta,
                                   const McOptions& opt) {
    if (opt.n < 2) throw contract_error("mc_delta_hinge: need n >= 2");
    return mc_estimate(opt, [&](RngStream& rng) {
        const ConditionedDraw draw = sampler.draw_psi(psi, rng);
        return hinge_cosine_increment(draw.ex, sampler.w_t(), sampler.w_bar(), eta);
    });
}

// Increment minus its first-order part; isolates the O(eta^2) remainder so
// eta-halving can expose the expected 4x shrinkage.
inline RateEstimate mc_delta_hinge_residual(const HingeSampler& sampler, double psi,
                                            double eta, const McOptions& opt) {
    return mc_estimate(opt, [&](RngStream& rng) {
        const ConditionedDraw draw = sampler.draw_psi(psi, rng);
        const double exact =
            hinge_cosine_increment(draw.ex, sampler.w_t(), sampler.w_bar(), eta);
        const bool active = dot(draw.ex.x, sampler.w_t()) * draw.ex.y <= 1.0;
        if (!active) return exact;
        const double x2 = sampler.x2_of(draw.ex.x) * draw.ex.y;  // un-mirrored coordinate
        return exact - eta * hinge_first_order_integrand(x2, psi, sampler.frame());
    });
}

inline RateEstimate mc_delta_hinge_local(const HingeSampler& sampler, double psi,
                                         double upsilon, double eta, const McOptions& opt) {
    return mc_estimate(opt, [&](RngStream& rng) {
        const ConditionedDraw draw = sampler.draw_psi_upsilon(psi, upsilon, rng);
        return hinge_cosine_increment(draw.ex, sampler.w_t(), sampler.w_bar(), eta);
    });
}

// First-order rate at fixed psi: integral of eta * integrand * f(x2) over
// x2 < B(psi), truncated where the marginal's tail mass drops below 1e-10.
inline double quad_delta_hinge(const ScalarLaw& x2_law, const HingeFrame& frame, double psi,
                               double eta) {
    if (!x2_law.continuous()) {
        throw contract_error("quad_delta_hinge: marginal must have a density");
    }
    const double upper_raw = hinge_bound(psi, frame);
    const double lower = x2_law.kind == ScalarKind::Uniform
                             ? x2_law.lo
                             : x2_law.lower_tail_bound(1e-10);
    const double upper =
        x2_law.kind == ScalarKind::Uniform ? std::min(upper_raw, x2_law.hi) : upper_raw;
    if (!(lower < upper)) return 0.0;
    const auto integrand = [&](double x2) {
        return eta * hinge_first_order_integrand(x2, psi, frame) * x2_law.density(x2);
    };
    const QuadratureResult q = integrate_adaptive(integrand, lower, upper, 1e-12, 1e-16);
    if (!q.converged) throw error("quad_delta_hinge: quadrature did not converge");
    return q.value;
}

// Delta(psi, upsilon) = eta [(1-psi) sin^2 - X(psi, upsilon) sin cos],
// first order in eta.
inline double closed_delta_hinge_local(double psi, double upsilon, const HingeFrame& frame,
                                       double eta) {
    if (!(upsilon > 0.0)) {
        throw contract_error("closed_delta_hinge_local: upsilon must be > 0");
    }
    return eta * hinge_first_order_integrand(hinge_chi(psi, upsilon, frame), psi, frame);
}

// ---------------------------------------------------------------------------
// Monotonicity probe over a (score, estimate) curve.

enum class MonotonicVerdict { Decreasing, Increasing, Mixed, Inconclusive };

inline const char* to_string(MonotonicVerdict v) {
    switch (v) {
        case MonotonicVerdict::Decreasing: return "Decreasing";
        case MonotonicVerdict::Increasing: return "Increasing";
        case MonotonicVerdict::Mixed: return "Mixed";
        case MonotonicVerdict::Inconclusive: return "Inconclusive";
    }
    return "?";
}

struct ProbeInterval {
    double z = 0.0;
    bool conclusive = false;
};

struct ProbeResult {
    MonotonicVerdict verdict = MonotonicVerdict::Inconclusive;
    std::vector<ProbeInterval> intervals;

    bool all_conclusive() const {
        for (const auto& iv : intervals) {
            if (!iv.conclusive) return false;
        }
        return !intervals.empty();
    }
};

// Tests successive differences at |z| >= z_threshold; the verdict covers
// conclusive intervals only, and fewer than two conclusive intervals yield
// an inconclusive verdict.
inline ProbeResult monotonicity_probe(std::span<const double> scores,
                                      std::span<const RateEstimate> estimates,
                                      double z_threshold = 3.0) {
    if (scores.size() != estimates.size()) {
        throw dimension_error("monotonicity_probe: curve lengths differ");
    }
    if (scores.size() < 3) throw contract_error("monotonicity_probe: need >= 3 grid points");
    for (std::size_t i = 0; i + 1 < scores.size(); ++i) {
        if (!(scores[i] < scores[i + 1])) {
            throw contract_error("monotonicity_probe: scores must be strictly increasing");
        }
    }
    ProbeResult out;
    std::size_t up = 0, down = 0, conclusive = 0;
    for (std::size_t i = 0; i + 1 < estimates.size(); ++i) {
        const double diff = estimates[i + 1].mean - estimates[i].mean;
        const double se = std::hypot(estimates[i].std_error, estimates[i + 1].std_error);
        ProbeInterval iv;
        if (se > 0.0) {
            iv.z = diff / se;
        } else {
            iv.z = diff == 0.0 ? 0.0
                               : std::copysign(std::numeric_limits<double>::infinity(), diff);
        }
        iv.conclusive = std::fabs(iv.z) >= z_threshold;
        if (iv.conclusive) {
            ++conclusive;
            (iv.z > 0.0 ? up : down) += 1;
        }
        out.intervals.push_back(iv);
    }
    if (conclusive < 2) {
        out.verdict = MonotonicVerdict::Inconclusive;
    } else if (up == conclusive) {
        out.verdict = MonotonicVerdict::Increasing;
    } else if (down == conclusive) {
        out.verdict = MonotonicVerdict::Decreasing;
    } else {
        out.verdict = MonotonicVerdict::Mixed;
    }
    return out;
}

}  // namespace curriculum_lab
