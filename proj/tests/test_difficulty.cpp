#include <doctest.h>

#include <cmath>

#include "curriculum_lab/difficulty.hpp"
#include "curriculum_lab/geometry.hpp"
#include "curriculum_lab/rng.hpp"
#include "curriculum_lab/samplers.hpp"

namespace cl = curriculum_lab;
using cl::operator-;

TEST_SUITE("difficulty") {

TEST_CASE("global score: realizable point, absolute residual, hinge margin") {
    const auto regression = cl::Problem::regression(0.1);
    cl::LabeledExample realizable{{2.0, 1.0}, 5.0};
    CHECK(cl::global_score(regression, realizable, {1.0, 3.0}) == doctest::Approx(0.0));

    cl::LabeledExample off{{1.0, 1.0}, 3.0};  // x.w - y = -3 with w = 0
    CHECK(cl::global_score(regression, off, {0.0, 0.0}) == doctest::Approx(3.0));

    const auto hinge = cl::Problem::hinge(0.1);
    cl::LabeledExample quarter{{0.25, 0.0}, 1.0};
    CHECK(cl::global_score(hinge, quarter, {1.0, 0.0}) == doctest::Approx(0.75));
}

TEST_CASE("local score equals global score at the optimum") {
    cl::RngStream rng(23, 0);
    const auto problem = cl::Problem::regression(0.1);
    const cl::ParamVector w{0.3, -0.7, 0.2};
    for (int i = 0; i < 100; ++i) {
        cl::LabeledExample ex{{rng.normal(), rng.normal(), 1.0}, rng.normal()};
        CHECK(cl::local_score(problem, ex, w) ==
              doctest::Approx(cl::global_score(problem, ex, w)));
    }
}

TEST_CASE("regression local score matches the region identity") {
    cl::RngStream rng(23, 1);
    const auto problem = cl::Problem::regression(0.1);
    const cl::ParamVector w_bar{0.5, -0.4, 0.8};
    const cl::ParamVector w_t{-0.9, 0.1, 0.4};
    const double lambda = cl::norm(w_bar - w_t);
    for (int i = 0; i < 10000; ++i) {
        cl::LabeledExample ex{{rng.normal(), rng.normal(), 1.0}, 0.0};
        const double psi = rng.uniform(0.0, 2.0);
        const auto branch = rng.uniform01() < 0.5 ? cl::LabelBranch::Plus
                                                  : cl::LabelBranch::Minus;
        ex.y = cl::branch_label(branch, cl::dot(ex.x, w_bar), psi);
        const auto polar = cl::polar_decompose(ex.x, w_t, w_bar);
        const auto region =
            cl::region_classify(polar.r * polar.cos_theta, psi, lambda, branch);
        CHECK(cl::local_score(problem, ex, w_t) ==
              doctest::Approx(region.upsilon).epsilon(1e-9));
    }
}

TEST_CASE("hinge scores are invariant under the norm-A rescaling") {
    cl::RngStream rng(23, 2);
    const double A = 3.0;
    cl::ParamVector w_hat{0.6, -0.8, 0.0};
    const auto scaled_problem = cl::Problem::hinge(0.1, A);
    const auto unit_problem = cl::Problem::hinge(0.1, 1.0);
    for (int i = 0; i < 200; ++i) {
        cl::LabeledExample ex{{rng.normal(), rng.normal(), 1.0},
                              rng.uniform01() < 0.5 ? 1.0 : -1.0};
        cl::LabeledExample rescaled{cl::scaled(ex.x, A), ex.y};
        const double score_a =
            cl::global_score(scaled_problem, ex, cl::scaled(w_hat, A));
        const double score_1 = cl::global_score(unit_problem, rescaled, w_hat);
        CHECK(score_a == doctest::Approx(score_1).epsilon(1e-12));
    }
}

TEST_CASE("scores ignore dataset order") {
    cl::RngStream rng(23, 3);
    const auto problem = cl::Problem::regression(0.1);
    const cl::ParamVector w{0.1, 0.2, 0.3};
    std::vector<cl::LabeledExample> pool;
    for (int i = 0; i < 50; ++i) {
        pool.push_back({{rng.normal(), rng.normal(), 1.0}, rng.normal()});
    }
    std::vector<double> forward, backward(pool.size());
    for (const auto& ex : pool) forward.push_back(cl::global_score(problem, ex, w));
    for (std::size_t i = pool.size(); i-- > 0;) {
        backward[i] = cl::global_score(problem, pool[i], w);
    }
    CHECK(forward == backward);
}

}  // TEST_SUITE
