// Acceptance suite: runs every verification criterion at its pinned
// tolerance and prints one PASS/FAIL line per criterion. Exits nonzero if
// any criterion fails.

#include <chrono>
#include <cstdio>

#include "curriculum_lab/verify.hpp"

int main() {
    namespace cl = curriculum_lab;
    cl::VerifyConfig cfg;
    cfg.jobs = 2;

    using clock = std::chrono::steady_clock;
    const auto suite_start = clock::now();

    using Criterion = cl::CriterionResult (*)(const cl::VerifyConfig&);
    const Criterion criteria[] = {
        cl::criterion_regression_oracle, cl::criterion_global_score_monotonic,
        cl::criterion_distance_clause,   cl::criterion_local_score_monotonic,
        cl::criterion_nabla,             cl::criterion_local_preference,
        cl::criterion_hinge_oracle,      cl::criterion_hinge_global,
        cl::criterion_hinge_local,       cl::criterion_norm_invariance,
        cl::criterion_race,              cl::criterion_hygiene,
    };

    bool all_ok = true;
    for (const auto& criterion : criteria) {
        const auto start = clock::now();
        const cl::CriterionResult result = criterion(cfg);
        const double secs = std::chrono::duration<double>(clock::now() - start).count();
        std::printf("%s  criterion %2d: %s [%.1fs] — %s\n", result.pass ? "PASS" : "FAIL",
                    result.id, result.name.c_str(), secs, result.details.c_str());
        std::fflush(stdout);
        all_ok = all_ok && result.pass;
    }
    const double total = std::chrono::duration<double>(clock::now() - suite_start).count();
    std::printf("%s — acceptance suite (%.1fs total)\n", all_ok ? "PASS" : "FAIL", total);
    return all_ok ? 0 : 1;
}
