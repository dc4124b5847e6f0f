// Constructive verifiers for the negative results: hypotheses near the
// optimum where preferring high local difficulty hurts, and a truncated
// hinge marginal where the rate is not decreasing in the global score
// below 1 - cos(theta).
#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "curriculum_lab/estimators.hpp"

namespace curriculum_lab {

// Monte Carlo estimate of the regression rate at fixed LOCAL score: labels
// are y = x.w_t -+ upsilon, with branch odds given by the label-noise
// density around the planted x.w_bar. Well-defined at w_t == w_bar (no
// polar frame is needed for the direct decrement).
inline RateEstimate mc_delta_regression_fixed_local(const BaseDistribution& dist,
                                                    const ParamVector& w_bar,
                                                    const ParamVector& w_t, double upsilon,
                                                    double eta, const ScalarLaw& noise,
                                                    const McOptions& opt) {
    if (!(upsilon >= 0.0)) throw contract_error("fixed-local delta: upsilon must be >= 0");
    const double before = squared_norm(w_t - w_bar);
    return mc_estimate(opt, [&](RngStream& rng) {
        LabeledExample ex;
        ex.x = sample_base(dist, rng);
        const double shift = dot(ex.x, w_t) - dot(ex.x, w_bar);
        // residual +upsilon  => y = x.w_t - upsilon => label noise shift - upsilon
        const double weights[2] = {noise.density(shift - upsilon),
                                   noise.density(shift + upsilon)};
        const std::size_t pick = rng.pick_weighted(weights);
        ex.y = dot(ex.x, w_t) + (pick == 0 ? -upsilon : upsilon);
        return squared_distance_decrement(ex, w_t, w_bar, eta, before);
    });
}

struct LocalPreferenceOptions {
    double delta0 = 1.0;
    int max_halvings = 40;
    McOptions mc{};                   // per-probe sample budget
    ScalarLaw noise = ScalarLaw::gaussian(0.0, 1.0);
    std::optional<double> m_r2_exact; // E[r^2] when known analytically
};

struct LocalPreferenceReport {
    double upsilon = 0.0;
    double eta = 0.0;
    double delta_found = 0.0;       // |w - w_bar| of the witness
    ParamVector w_witness;
    RateEstimate delta_at_witness;  // MC rate at fixed local score
    double m_r2 = 0.0;
    double bound = 0.0;             // -2 eta^2 upsilon^2 E[r^2]
    int halvings = 0;
    bool verdict = false;
    std::uint64_t seed = 0;
};

// Halving search for a hypothesis near w_bar whose fixed-local-score rate
// is negative and beats the proof's quantitative bound. The existential
// delta of the proof becomes an explicit witness.
inline LocalPreferenceReport build_local_preference_counterexample(const BaseDistribution& dist, const ParamVector& w_bar,
                                     double upsilon, double eta,
                                     const LocalPreferenceOptions& opt) {
    if (!(upsilon > 0.0)) throw contract_error("build_local_preference_counterexample: upsilon must be > 0");
    if (!(eta > 0.0)) throw contract_error("build_local_preference_counterexample: eta must be > 0");
    if (dist.kind == DistKind::PointMass) {
        throw contract_error("build_local_preference_counterexample: distribution must be continuous");
    }

    double m_r2;
    if (opt.m_r2_exact) {
        m_r2 = *opt.m_r2_exact;
    } else if (dist.kind == DistKind::StandardGaussian) {
        m_r2 = static_cast<double>(dist.dim) + 1.0;
    } else {
        McOptions mopt = opt.mc;
        mopt.stream_base += 1u << 20;
        const auto stats =
            mc_accumulate<1>(mopt, [&](RngStream& rng, std::array<double, 1>& v) {
                v[0] = squared_norm(sample_base(dist, rng));
            });
        m_r2 = stats[0].mean;
    }

    RngStream direction_rng(opt.mc.seed, opt.mc.stream_base + (1u << 21));
    ParamVector direction(w_bar.size());
    for (auto& c : direction) c = direction_rng.normal();
    const double dir_norm = norm(direction);
    if (!(dir_norm > 0.0)) throw error("build_local_preference_counterexample: degenerate direction");
    for (auto& c : direction) c /= dir_norm;

    LocalPreferenceReport report;
    report.upsilon = upsilon;
    report.eta = eta;
    report.m_r2 = m_r2;
    report.bound = -2.0 * eta * eta * upsilon * upsilon * m_r2;
    report.seed = opt.mc.seed;

    double delta = opt.delta0;
    for (int k = 0; k <= opt.max_halvings; ++k, delta *= 0.5) {
        ParamVector w = w_bar;
        axpy(delta, direction, w);
        McOptions probe = opt.mc;
        probe.stream_base += static_cast<std::uint64_t>(k) * (1u << 16);
        const RateEstimate est = mc_delta_regression_fixed_local(dist, w_bar, w, upsilon,
                                                                 eta, opt.noise, probe);
        const bool negative = est.mean + 3.0 * est.std_error < 0.0;
        const bool beats_bound = est.mean < report.bound + 3.0 * est.std_error;
        if (negative && beats_bound) {
            report.delta_found = delta;
            report.w_witness = w;
            report.delta_at_witness = est;
            report.halvings = k;
            report.verdict = true;
            return report;
        }
    }
    throw construction_failed_error("build_local_preference_counterexample: no witness after " +
                                    std::to_string(opt.max_halvings) + " halvings");
}

struct HingeLowPsiOptions {
    McOptions mc{};
    int positivity_grid = 64;
};

struct HingeLowPsiReport {
    double psi1 = 0.0;
    double psi2 = 0.0;
    double bound_lo = 0.0;  // B(psi1), lower edge of the truncated support
    double bound_hi = 0.0;  // B(psi2)
    double delta_psi1_quad = 0.0;
    RateEstimate delta_psi1_mc;
    double delta_psi2_quad = 0.0;
    RateEstimate delta_psi2_mc;
    bool integrand_positive = false;
    bool verdict = false;
    std::uint64_t seed = 0;
};

// Marginal supported on (B(psi1), B(psi2)] makes Delta(psi1) vanish exactly
// while Delta(psi2) stays positive: the rate is not decreasing on
// [0, 1 - cos(theta)).
inline HingeLowPsiReport build_hinge_low_psi(const HingeFrame& frame, double psi1,
                                             double psi2, const HingeLowPsiOptions& opt) {
    if (!(frame.cos_theta > 0.0)) {
        throw contract_error("build_hinge_low_psi: need cos(theta) > 0");
    }
    if (!(0.0 < psi1 && psi1 < psi2 && psi2 < 1.0 - frame.cos_theta)) {
        throw contract_error(
            "build_hinge_low_psi: need 0 < psi1 < psi2 < 1 - cos(theta)");
    }
    HingeLowPsiReport report;
    report.psi1 = psi1;
    report.psi2 = psi2;
    report.bound_lo = hinge_bound(psi1, frame);
    report.bound_hi = hinge_bound(psi2, frame);
    report.seed = opt.mc.seed;

    const ScalarLaw marginal = ScalarLaw::uniform(report.bound_lo, report.bound_hi);
    const HingeSampler sampler(frame, marginal, BaseDistribution::standard_gaussian(1));
    const double eta = 1e-3;

    report.delta_psi1_quad = quad_delta_hinge(marginal, frame, psi1, eta);
    report.delta_psi2_quad = quad_delta_hinge(marginal, frame, psi2, eta);
    report.delta_psi1_mc = mc_delta_hinge(sampler, psi1, eta, opt.mc);
    McOptions mc2 = opt.mc;
    mc2.stream_base += 1u << 16;
    report.delta_psi2_mc = mc_delta_hinge(sampler, psi2, eta, mc2);

    report.integrand_positive = true;
    for (int i = 1; i <= opt.positivity_grid; ++i) {
        const double x2 = report.bound_lo + (report.bound_hi - report.bound_lo) *
                                                static_cast<double>(i) /
                                                static_cast<double>(opt.positivity_grid);
        if (!(hinge_first_order_integrand(x2, psi2, frame) > 0.0)) {
            report.integrand_positive = false;
        }
    }

    report.verdict = report.delta_psi1_quad == 0.0 && report.delta_psi1_mc.mean == 0.0 &&
                     report.delta_psi1_mc.std_error == 0.0 &&
                     report.delta_psi2_mc.mean > 3.0 * report.delta_psi2_mc.std_error &&
                     report.integrand_positive;
    return report;
}

}  // namespace curriculum_lab
