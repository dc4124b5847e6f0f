// Config-driven experiment runners behind the CLI: delta sweeps with both
// Monte Carlo and closed-form columns, policy races with paired sign
// tests, and the counterexample drivers.
#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "curriculum_lab/counterexamples.hpp"
#include "curriculum_lab/curriculum.hpp"
#include "curriculum_lab/estimators.hpp"
#include "curriculum_lab/io.hpp"

namespace curriculum_lab {

// Deterministic nonzero planted hypothesis used by default geometries.
inline ParamVector default_w_bar(std::size_t length) {
    static constexpr double pattern[6] = {0.8, -0.5, 0.3, 0.6, -0.2, 0.4};
    ParamVector w(length);
    for (std::size_t i = 0; i < length; ++i) w[i] = pattern[i % 6];
    return w;
}

// Current hypothesis at distance lambda from w_bar along the first feature
// axis, so the zenith direction is e1 and Gaussian moments stay analytic.
inline ParamVector shifted_w_t(const ParamVector& w_bar, double lambda) {
    ParamVector w_t = w_bar;
    w_t[0] -= lambda;
    return w_t;
}

// ---------------------------------------------------------------------------
// Config parsing.

inline BaseDistribution parse_distribution(const json& node, int dim) {
    const std::string kind = node.value("kind", "gaussian");
    if (kind == "gaussian") return BaseDistribution::standard_gaussian(dim);
    if (kind == "box") return BaseDistribution::uniform_box(dim, node.value("half_width", 1.0));
    if (kind == "ball") return BaseDistribution::uniform_ball(dim, node.value("radius", 1.0));
    throw config_error("unknown distribution kind: " + kind);
}

inline ScalarLaw parse_scalar_law(const json& node) {
    const std::string kind = node.value("kind", "gaussian");
    if (kind == "gaussian") return ScalarLaw::gaussian(node.value("mu", 0.0), node.value("sigma", 1.0));
    if (kind == "uniform") return ScalarLaw::uniform(node.value("lo", -1.0), node.value("hi", 1.0));
    if (kind == "half_gaussian") return ScalarLaw::half_gaussian(node.value("sigma", 1.0));
    if (kind == "point_mass") return ScalarLaw::point_mass(node.value("value", 0.0));
    throw config_error("unknown scalar law kind: " + kind);
}

struct SweepConfig {
    std::string problem = "regression";  // "regression" | "hinge"
    std::string mode = "global";         // "global" | "local"
    std::vector<double> psi{0.0, 0.5, 1.0, 1.5, 2.0};
    std::vector<double> upsilon{0.5, 1.0};
    double lambda = 1.0;
    double theta = std::numbers::pi / 3.0;
    double eta = 1e-3;
    std::uint64_t n = 100000;
    int dim = 2;
    json dist = json{{"kind", "gaussian"}};
    json x2 = json{{"kind", "gaussian"}};

    static SweepConfig from_json(const json& j) {
        SweepConfig cfg;
        cfg.problem = j.value("problem", cfg.problem);
        cfg.mode = j.value("mode", cfg.mode);
        if (j.contains("psi")) cfg.psi = j.at("psi").get<std::vector<double>>();
        if (j.contains("upsilon")) cfg.upsilon = j.at("upsilon").get<std::vector<double>>();
        cfg.lambda = j.value("lambda", cfg.lambda);
        cfg.theta = j.value("theta", cfg.theta);
        cfg.eta = j.value("eta", cfg.eta);
        cfg.n = j.value("n", cfg.n);
        cfg.dim = j.value("dim", cfg.dim);
        if (j.contains("dist")) cfg.dist = j.at("dist");
        if (j.contains("x2")) cfg.x2 = j.at("x2");
        if (cfg.problem != "regression" && cfg.problem != "hinge") {
            throw config_error("sweep.problem must be regression or hinge");
        }
        if (cfg.mode != "global" && cfg.mode != "local") {
            throw config_error("sweep.mode must be global or local");
        }
        if (cfg.psi.empty()) throw config_error("sweep.psi must be nonempty");
        if (!(cfg.eta > 0.0)) throw config_error("sweep.eta must be > 0");
        if (cfg.n < 2) throw config_error("sweep.n must be >= 2");
        if (cfg.dim < 1) throw config_error("sweep.dim must be >= 1");
        if (!(cfg.lambda > 0.0)) throw config_error("sweep.lambda must be > 0");
        return cfg;
    }
};

// ---------------------------------------------------------------------------
// Sweeps.

inline std::vector<SweepRow> run_sweep(const SweepConfig& cfg, std::uint64_t seed, int jobs) {
    std::vector<SweepRow> rows;
    McOptions opt;
    opt.n = cfg.n;
    opt.seed = seed;
    opt.jobs = jobs;

    if (cfg.problem == "regression") {
        const BaseDistribution dist = parse_distribution(cfg.dist, cfg.dim);
        const ParamVector w_bar = default_w_bar(static_cast<std::size_t>(cfg.dim) + 1);
        const ParamVector w_t = shifted_w_t(w_bar, cfg.lambda);
        if (cfg.mode == "global") {
            McOptions mopt = opt;
            mopt.stream_base = 1u << 24;
            const MomentEstimate moments = moment_oracle(dist, w_bar, w_t, mopt);
            for (double psi : cfg.psi) {
                const RateEstimate mc = mc_delta_regression(dist, w_bar, w_t, psi, cfg.eta, opt);
                opt.stream_base += 1u << 16;
                SweepRow row{"regression", psi, std::nullopt, cfg.lambda, cfg.eta, cfg.n,
                             mc.mean, mc.std_error,
                             closed_delta_regression(moments.value, psi, cfg.lambda, cfg.eta),
                             "ClosedForm"};
                rows.push_back(row);
            }
        } else {
            const PsiUpsilonRegressionSampler sampler(dist, w_bar, w_t);
            const auto density = [&](double u) { return sampler.marginal().weight(u); };
            for (double psi : cfg.psi) {
                for (double ups : cfg.upsilon) {
                    const RateEstimate mc =
                        mc_delta_regression_local(sampler, psi, ups, cfg.eta, opt);
                    opt.stream_base += 1u << 16;
                    const double closed = closed_delta_regression_local(
                        psi, ups, cfg.eta, nabla(density, psi, ups, cfg.lambda));
                    rows.push_back(SweepRow{"regression", psi, ups, cfg.lambda, cfg.eta,
                                            cfg.n, mc.mean, mc.std_error, closed,
                                            "ClosedForm"});
                }
            }
        }
        return rows;
    }

    // hinge: x2 marginal plus a Gaussian tail for the remaining coordinates
    const HingeFrame frame = hinge_frame_from_angle(cfg.theta);
    const ScalarLaw x2_law = parse_scalar_law(cfg.x2);
    std::optional<BaseDistribution> tail;
    if (cfg.dim >= 2) tail = BaseDistribution::standard_gaussian(cfg.dim - 1);
    const HingeSampler sampler(frame, x2_law, tail);
    if (cfg.mode == "global") {
        for (double psi : cfg.psi) {
            const RateEstimate mc = mc_delta_hinge(sampler, psi, cfg.eta, opt);
            opt.stream_base += 1u << 16;
            rows.push_back(SweepRow{"hinge", psi, std::nullopt, cfg.theta, cfg.eta, cfg.n,
                                    mc.mean, mc.std_error,
                                    quad_delta_hinge(x2_law, frame, psi, cfg.eta),
                                    "Quadrature"});
        }
    } else {
        for (double psi : cfg.psi) {
            for (double ups : cfg.upsilon) {
                const RateEstimate mc = mc_delta_hinge_local(sampler, psi, ups, cfg.eta, opt);
                opt.stream_base += 1u << 16;
                rows.push_back(SweepRow{"hinge", psi, ups, cfg.theta, cfg.eta, cfg.n,
                                        mc.mean, mc.std_error,
                                        closed_delta_hinge_local(psi, ups, frame, cfg.eta),
                                        "ClosedForm"});
            }
        }
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Policy races.

struct RaceConfig {
    std::vector<std::string> policies{"curriculum", "anti-curriculum"};
    std::size_t pool_size = 10000;
    std::uint64_t steps = 10000;
    std::uint64_t record_at = 1000;  // paired comparison step
    std::uint64_t record_stride = 100;
    int seeds = 100;
    double eta = 0.05;
    int dim = 2;
    double score_sigma = 1.0;
    double init_distance = 2.0;
    double p0 = 0.1;
    std::uint64_t refresh_period = 10;
    std::size_t eval_subset = 0;
    json dist = json{{"kind", "gaussian"}};

    static RaceConfig from_json(const json& j) {
        RaceConfig cfg;
        if (j.contains("policies")) cfg.policies = j.at("policies").get<std::vector<std::string>>();
        cfg.pool_size = j.value("pool_size", cfg.pool_size);
        cfg.steps = j.value("steps", cfg.steps);
        cfg.record_at = j.value("record_at", cfg.record_at);
        cfg.record_stride = j.value("record_stride", cfg.record_stride);
        cfg.seeds = j.value("seeds", cfg.seeds);
        cfg.eta = j.value("eta", cfg.eta);
        cfg.dim = j.value("dim", cfg.dim);
        cfg.score_sigma = j.value("score_sigma", cfg.score_sigma);
        cfg.init_distance = j.value("init_distance", cfg.init_distance);
        cfg.p0 = j.value("p0", cfg.p0);
        cfg.refresh_period = j.value("refresh_period", cfg.refresh_period);
        cfg.eval_subset = j.value("eval_subset", cfg.eval_subset);
        if (j.contains("dist")) cfg.dist = j.at("dist");
        if (cfg.policies.empty()) throw config_error("race.policies must be nonempty");
        if (cfg.seeds < 1) throw config_error("race.seeds must be >= 1");
        if (cfg.record_at > cfg.steps) throw config_error("race.record_at beyond steps");
        for (const auto& p : cfg.policies) policy_from_string(p);  // validate
        if (!(cfg.eta > 0.0)) throw config_error("race.eta must be > 0");
        return cfg;
    }
};

struct RaceOutput {
    std::vector<TrajectoryRow> trajectories;
    json summary;
};

inline RaceOutput run_race(const RaceConfig& cfg, std::uint64_t seed) {
    const BaseDistribution dist = parse_distribution(cfg.dist, cfg.dim);
    const ParamVector w_bar = default_w_bar(static_cast<std::size_t>(cfg.dim) + 1);
    const ScalarLaw score_law = ScalarLaw::half_gaussian(cfg.score_sigma);

    RaceOutput out;
    // metric_at_mark[policy][seed]
    std::map<std::string, std::vector<double>> at_mark;
    std::map<std::string, RunningStat> final_metric;

    for (int run = 0; run < cfg.seeds; ++run) {
        const auto run_offset = static_cast<std::uint64_t>(run) * 16;
        RngStream pool_rng(seed, run_offset);
        const TrainingPool pool =
            build_pool(dist, w_bar, cfg.pool_size, score_law, cfg.eta, pool_rng);

        RngStream init_rng(seed, run_offset + 1);
        ParamVector w0 = w_bar;
        {
            ParamVector dir(w_bar.size());
            for (auto& c : dir) c = init_rng.normal();
            const double len = norm(dir);
            axpy(cfg.init_distance / len, dir, w0);
        }

        for (const auto& policy_name : cfg.policies) {
            SchedulePolicy policy;
            policy.kind = policy_from_string(policy_name);
            policy.pacing.p0 = cfg.p0;
            policy.refresh_period = cfg.refresh_period;
            TrainingOptions topt;
            topt.steps = cfg.steps;
            topt.budget = cfg.steps;
            topt.eval_subset = cfg.eval_subset;
            RngStream run_rng(seed, run_offset + 2);
            const Trajectory traj = run_training(policy, pool, w0, topt, run_rng);
            for (const auto& rec : traj.records) {
                const bool keep = rec.step % std::max<std::uint64_t>(1, cfg.record_stride) == 0 ||
                                  rec.step == cfg.record_at;
                if (keep) {
                    out.trajectories.push_back(TrajectoryRow{
                        policy_name, static_cast<std::uint64_t>(run), rec.step,
                        rec.example_id, rec.metric, rec.pool_loss});
                }
            }
            at_mark[policy_name].push_back(traj.records.at(cfg.record_at).metric);
            final_metric[policy_name].add(traj.records.back().metric);
        }
    }

    json per_policy = json::object();
    for (const auto& [name, values] : at_mark) {
        RunningStat stat;
        for (double v : values) stat.add(v);
        per_policy[name] = {{"mean_metric_at_mark", checked_finite(stat.mean, "race mean")},
                            {"std_error", stat.std_error()},
                            {"mean_metric_final", final_metric[name].mean}};
    }
    json comparisons = json::array();
    for (std::size_t i = 0; i < cfg.policies.size(); ++i) {
        for (std::size_t j = i + 1; j < cfg.policies.size(); ++j) {
            const auto& a = at_mark[cfg.policies[i]];
            const auto& b = at_mark[cfg.policies[j]];
            int wins_a = 0;
            for (std::size_t k = 0; k < a.size(); ++k) {
                if (a[k] < b[k]) ++wins_a;  // lower distance-to-optimum wins
            }
            const double p = sign_test_p_value(wins_a, static_cast<int>(a.size()));
            comparisons.push_back({{"a", cfg.policies[i]},
                                   {"b", cfg.policies[j]},
                                   {"wins_a", wins_a},
                                   {"seeds", a.size()},
                                   {"sign_test_p", p},
                                   {"advantage_a", p < 0.01},
                                   {"at_step", cfg.record_at}});
        }
    }
    out.summary = {{"seed", seed},
                   {"record_at", cfg.record_at},
                   {"per_policy", per_policy}};
    if (cfg.policies.size() > 1) out.summary["comparisons"] = comparisons;
    return out;
}

// ---------------------------------------------------------------------------
// Counterexample driver.

struct CounterexampleConfig {
    std::string mode = "local_preference";  // "local_preference" | "hinge_low_psi"
    // local_preference
    double upsilon = 1.0;
    double eta = 0.01;
    int dim = 2;
    double noise_sigma = 1.0;
    // hinge_low_psi
    double theta = std::numbers::pi / 3.0;
    double psi1 = 0.1;
    double psi2 = 0.4;
    std::uint64_t n = 100000;

    static CounterexampleConfig from_json(const json& j) {
        CounterexampleConfig cfg;
        cfg.mode = j.value("mode", cfg.mode);
        cfg.upsilon = j.value("upsilon", cfg.upsilon);
        cfg.eta = j.value("eta", cfg.eta);
        cfg.dim = j.value("dim", cfg.dim);
        cfg.noise_sigma = j.value("noise_sigma", cfg.noise_sigma);
        cfg.theta = j.value("theta", cfg.theta);
        cfg.psi1 = j.value("psi1", cfg.psi1);
        cfg.psi2 = j.value("psi2", cfg.psi2);
        cfg.n = j.value("n", cfg.n);
        if (cfg.mode != "local_preference" && cfg.mode != "hinge_low_psi") {
            throw config_error("counterexample.mode must be local_preference or hinge_low_psi");
        }
        if (cfg.n < 2) throw config_error("counterexample.n must be >= 2");
        return cfg;
    }
};

inline json local_preference_report_json(const LocalPreferenceReport& report) {
    return json{{"kind", "local_preference"},
                {"seed", report.seed},
                {"upsilon", report.upsilon},
                {"eta", report.eta},
                {"delta_found", checked_finite(report.delta_found, "delta")},
                {"halvings", report.halvings},
                {"w_witness", report.w_witness},
                {"delta_at_witness", rate_to_json(report.delta_at_witness)},
                {"m_r2", report.m_r2},
                {"bound", report.bound},
                {"verdict", report.verdict}};
}

inline json hinge_low_psi_report_json(const HingeLowPsiReport& report) {
    return json{{"kind", "hinge_low_psi"},
                {"seed", report.seed},
                {"psi1", report.psi1},
                {"psi2", report.psi2},
                {"bound_lo", report.bound_lo},
                {"bound_hi", report.bound_hi},
                {"delta_psi1_quad", report.delta_psi1_quad},
                {"delta_psi1_mc", rate_to_json(report.delta_psi1_mc)},
                {"delta_psi2_quad", report.delta_psi2_quad},
                {"delta_psi2_mc", rate_to_json(report.delta_psi2_mc)},
                {"integrand_positive", report.integrand_positive},
                {"verdict", report.verdict}};
}

// Minimal structural check used by tests and by the CLI after round-trips.
inline bool validate_counterexample_report(const json& report) {
    if (!report.is_object() || !report.contains("kind") || !report.contains("verdict") ||
        !report.contains("seed")) {
        return false;
    }
    const std::string kind = report.at("kind").get<std::string>();
    if (kind == "local_preference") {
        for (const char* key : {"upsilon", "eta", "delta_found", "w_witness",
                                "delta_at_witness", "bound", "m_r2"}) {
            if (!report.contains(key)) return false;
        }
        return report.at("delta_at_witness").contains("std_error");
    }
    if (kind == "hinge_low_psi") {
        for (const char* key : {"psi1", "psi2", "delta_psi1_quad", "delta_psi2_mc",
                                "integrand_positive"}) {
            if (!report.contains(key)) return false;
        }
        return true;
    }
    return false;
}

inline json run_counterexample(const CounterexampleConfig& cfg, std::uint64_t seed,
                               int jobs) {
    if (cfg.mode == "local_preference") {
        LocalPreferenceOptions opt;
        opt.mc.n = cfg.n;
        opt.mc.seed = seed;
        opt.mc.jobs = jobs;
        opt.noise = ScalarLaw::gaussian(0.0, cfg.noise_sigma);
        const auto dist = BaseDistribution::standard_gaussian(cfg.dim);
        const ParamVector w_bar = default_w_bar(static_cast<std::size_t>(cfg.dim) + 1);
        return local_preference_report_json(build_local_preference_counterexample(dist, w_bar, cfg.upsilon, cfg.eta, opt));
    }
    HingeLowPsiOptions opt;
    opt.mc.n = cfg.n;
    opt.mc.seed = seed;
    opt.mc.jobs = jobs;
    const HingeFrame frame = hinge_frame_from_angle(cfg.theta);
    return hinge_low_psi_report_json(build_hinge_low_psi(frame, cfg.psi1, cfg.psi2, opt));
}

}  // namespace curriculum_lab
