// Finite-pool training harness: pools with planted optima and configured
// score spreads, ordering policies over the pool (uniform, curriculum,
// anti-curriculum, self-paced, hard mining, combined), and the sequential
// SGD loop with trajectory recording.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "curriculum_lab/difficulty.hpp"
#include "curriculum_lab/distributions.hpp"
#include "curriculum_lab/losses.hpp"
#include "curriculum_lab/rng.hpp"

namespace curriculum_lab {

enum class PolicyKind {
    Uniform,
    CurriculumGlobal,
    AntiCurriculum,
    SelfPacedLocal,
    HardMiningLocal,
    Combined
};

inline const char* to_string(PolicyKind kind) {
    switch (kind) {
        case PolicyKind::Uniform: return "uniform";
        case PolicyKind::CurriculumGlobal: return "curriculum";
        case PolicyKind::AntiCurriculum: return "anti-curriculum";
        case PolicyKind::SelfPacedLocal: return "self-paced";
        case PolicyKind::HardMiningLocal: return "hard-mining";
        case PolicyKind::Combined: return "combined";
    }
    return "?";
}

inline PolicyKind policy_from_string(const std::string& name) {
    for (PolicyKind kind :
         {PolicyKind::Uniform, PolicyKind::CurriculumGlobal, PolicyKind::AntiCurriculum,
          PolicyKind::SelfPacedLocal, PolicyKind::HardMiningLocal, PolicyKind::Combined}) {
        if (name == to_string(kind)) return kind;
    }
    throw config_error("unknown policy: " + name);
}

// Linear pacing p(t) = p0 + (1 - p0) t / T: the fraction of the pool a
// paced policy may draw from at step t.
struct Pacing {
    double p0 = 0.1;

    double fraction(std::uint64_t t, std::uint64_t budget) const {
        if (!(p0 > 0.0 && p0 <= 1.0)) throw config_error("Pacing: p0 must be in (0, 1]");
        if (budget == 0) return 1.0;
        const double progress =
            std::min(1.0, static_cast<double>(t) / static_cast<double>(budget));
        return p0 + (1.0 - p0) * progress;
    }
};

struct SchedulePolicy {
    PolicyKind kind = PolicyKind::Uniform;
    Pacing pacing{};
    std::uint64_t refresh_period = 10;  // local-score refresh cadence, steps
};

struct TrainingPool {
    Problem problem;
    ParamVector w_bar;
    std::vector<LabeledExample> examples;
    std::vector<double> psi;  // per-example global score

    std::size_t size() const { return examples.size(); }
};

// Regression pool: per-example score drawn from score_law, label branch
// +-psi equally likely.
inline TrainingPool build_pool(const BaseDistribution& dist, const ParamVector& w_bar,
                               std::size_t size, const ScalarLaw& score_law, double eta,
                               RngStream& rng) {
    if (size < 1) throw config_error("build_pool: size must be >= 1");
    TrainingPool pool;
    pool.problem = Problem::regression(eta);
    pool.w_bar = w_bar;
    pool.examples.reserve(size);
    pool.psi.reserve(size);
    for (std::size_t i = 0; i < size; ++i) {
        const double psi = score_law.draw(rng);
        if (psi < 0.0) throw config_error("build_pool: score law produced psi < 0");
        LabeledExample ex;
        ex.x = sample_base(dist, rng);
        const double base = dot(ex.x, w_bar);
        ex.y = rng.uniform01() < 0.5 ? base + psi : base - psi;
        pool.examples.push_back(std::move(ex));
        pool.psi.push_back(psi);
    }
    return pool;
}

// Hinge pool with labels consistent with the planted separator; the global
// score is then implied by the geometry rather than drawn.
inline TrainingPool build_hinge_pool(const BaseDistribution& dist, const ParamVector& w_bar,
                                     std::size_t size, double eta, double norm_bound,
                                     RngStream& rng) {
    if (size < 1) throw config_error("build_hinge_pool: size must be >= 1");
    require_on_sphere(w_bar, norm_bound, "build_hinge_pool");
    TrainingPool pool;
    pool.problem = Problem::hinge(eta, norm_bound);
    pool.w_bar = w_bar;
    pool.examples.reserve(size);
    pool.psi.reserve(size);
    for (std::size_t i = 0; i < size; ++i) {
        LabeledExample ex;
        ex.x = sample_base(dist, rng);
        const double margin = dot(ex.x, w_bar);
        ex.y = margin >= 0.0 ? 1.0 : -1.0;
        pool.psi.push_back(global_score(pool.problem, ex, w_bar));
        pool.examples.push_back(std::move(ex));
    }
    return pool;
}

// Ordering state for one training run. Global order is fixed up front;
// local orders are refreshed every refresh_period steps.
class Scheduler {
  public:
    Scheduler(const SchedulePolicy& policy, const TrainingPool& pool)
        : policy_(policy), pool_(&pool) {
        global_order_ = sorted_order(pool.psi, /*ascending=*/true);
    }

    std::size_t next(const ParamVector& w_t, std::uint64_t t, std::uint64_t budget,
                     RngStream& rng) {
        const std::size_t n = pool_->size();
        if (n == 0) throw contract_error("Scheduler: empty pool");
        switch (policy_.kind) {
            case PolicyKind::Uniform:
                return rng.uniform_index(n);
            case PolicyKind::CurriculumGlobal:
                return pick_uniform_prefix(global_order_, fraction_count(t, budget), rng);
            case PolicyKind::AntiCurriculum:
                return pick_uniform_suffix(global_order_, fraction_count(t, budget), rng);
            case PolicyKind::SelfPacedLocal:
                refresh_local(w_t, t);
                return pick_uniform_prefix(local_order_, fraction_count(t, budget), rng);
            case PolicyKind::HardMiningLocal:
                refresh_local(w_t, t);
                return pick_uniform_suffix(local_order_, fraction_count(t, budget), rng);
            case PolicyKind::Combined: {
                // globally paced prefix, then the hardest member locally
                refresh_local(w_t, t);
                const std::size_t k = fraction_count(t, budget);
                std::size_t best = global_order_[0];
                double best_score = -1.0;
                for (std::size_t i = 0; i < k; ++i) {
                    const std::size_t id = global_order_[i];
                    if (local_scores_[id] > best_score) {
                        best_score = local_scores_[id];
                        best = id;
                    }
                }
                return best;
            }
        }
        throw error("Scheduler: unreachable");
    }

  private:
    static std::vector<std::size_t> sorted_order(const std::vector<double>& keys,
                                                 bool ascending) {
        std::vector<std::size_t> order(keys.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return ascending ? keys[a] < keys[b] : keys[a] > keys[b];
        });
        return order;
    }

    std::size_t fraction_count(std::uint64_t t, std::uint64_t budget) const {
        const double p = policy_.pacing.fraction(t, budget);
        const auto n = static_cast<double>(pool_->size());
        const auto k = static_cast<std::size_t>(std::ceil(p * n));
        return std::clamp<std::size_t>(k, 1, pool_->size());
    }

    std::size_t pick_uniform_prefix(const std::vector<std::size_t>& order, std::size_t k,
                                    RngStream& rng) {
        return order[rng.uniform_index(k)];
    }

    std::size_t pick_uniform_suffix(const std::vector<std::size_t>& order, std::size_t k,
                                    RngStream& rng) {
        return order[order.size() - 1 - rng.uniform_index(k)];
    }

    void refresh_local(const ParamVector& w_t, std::uint64_t t) {
        const std::uint64_t period = std::max<std::uint64_t>(1, policy_.refresh_period);
        if (!local_scores_.empty() && t % period != 0) return;
        local_scores_.resize(pool_->size());
        for (std::size_t i = 0; i < pool_->size(); ++i) {
            local_scores_[i] = local_score(pool_->problem, pool_->examples[i], w_t);
        }
        local_order_ = sorted_order(local_scores_, /*ascending=*/true);
    }

    SchedulePolicy policy_;
    const TrainingPool* pool_;
    std::vector<std::size_t> global_order_;
    std::vector<double> local_scores_;
    std::vector<std::size_t> local_order_;
};

// Single scheduling query without persistent state (fresh local scores).
inline std::size_t next_example(const SchedulePolicy& policy, const TrainingPool& pool,
                                const ParamVector& w_t, std::uint64_t t,
                                std::uint64_t budget, RngStream& rng) {
    Scheduler scheduler(policy, pool);
    return scheduler.next(w_t, t, budget, rng);
}

struct TrajectoryRecord {
    std::uint64_t step = 0;
    std::int64_t example_id = -1;  // -1 on the initial record
    double metric = 0.0;           // |w - w_bar| (regression), cos(w, w_bar) (hinge)
    double pool_loss = 0.0;        // mean loss over the evaluation subset
};

struct Trajectory {
    std::vector<TrajectoryRecord> records;  // steps + 1 entries, index 0 is initial
};

struct TrainingOptions {
    std::uint64_t steps = 1000;
    std::uint64_t budget = 0;       // pacing horizon; defaults to steps
    std::size_t eval_subset = 256;  // 0 disables pool-loss evaluation
};

inline double convergence_metric(const Problem& problem, const ParamVector& w,
                                 const ParamVector& w_bar) {
    return problem.kind == ProblemKind::Regression ? norm(w - w_bar)
                                                   : cosine_similarity(w, w_bar);
}

// Runs single-example SGD under the policy; deterministic given the rng
// stream. Records one row per step plus the initial state.
inline Trajectory run_training(const SchedulePolicy& policy, const TrainingPool& pool,
                               ParamVector w, const TrainingOptions& opt, RngStream& rng) {
    if (pool.size() == 0) throw contract_error("run_training: empty pool");
    const Problem& problem = pool.problem;
    if (problem.kind == ProblemKind::HingeClassification) {
        require_on_sphere(w, problem.norm_bound, "run_training");
    }
    const std::uint64_t budget = opt.budget == 0 ? opt.steps : opt.budget;

    std::vector<std::size_t> eval_ids;
    if (opt.eval_subset > 0) {
        const std::size_t count = std::min(opt.eval_subset, pool.size());
        const std::size_t stride = std::max<std::size_t>(1, pool.size() / count);
        for (std::size_t i = 0; i < pool.size() && eval_ids.size() < count; i += stride) {
            eval_ids.push_back(i);
        }
    }
    const auto eval_pool_loss = [&](const ParamVector& point) {
        if (eval_ids.empty()) return 0.0;
        double total = 0.0;
        for (std::size_t id : eval_ids) total += loss(problem, pool.examples[id], point);
        return total / static_cast<double>(eval_ids.size());
    };

    Scheduler scheduler(policy, pool);
    Trajectory out;
    out.records.reserve(opt.steps + 1);
    out.records.push_back(
        {0, -1, convergence_metric(problem, w, pool.w_bar), eval_pool_loss(w)});
    for (std::uint64_t t = 0; t < opt.steps; ++t) {
        const std::size_t id = scheduler.next(w, t, budget, rng);
        const LabeledExample& ex = pool.examples[id];
        w = problem.kind == ProblemKind::Regression
                ? sgd_step_regression(ex, w, problem.eta)
                : sgd_step_hinge(ex, w, problem.eta, problem.norm_bound);
        const double metric = convergence_metric(problem, w, pool.w_bar);
        if (!std::isfinite(metric)) throw error("run_training: metric diverged");
        out.records.push_back({t + 1, static_cast<std::int64_t>(id), metric,
                               eval_pool_loss(w)});
    }
    return out;
}

}  // namespace curriculum_lab
