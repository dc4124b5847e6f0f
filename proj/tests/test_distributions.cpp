#include <doctest.h>

#include <cmath>

#include "curriculum_lab/distributions.hpp"
#include "curriculum_lab/quadrature.hpp"

namespace cl = curriculum_lab;

TEST_SUITE("distributions") {

TEST_CASE("sample_base appends the bias coordinate and respects support") {
    cl::RngStream rng(2024, 0);

    const auto pm = cl::BaseDistribution::point_mass({{{3.0}, 1.0}});
    const auto atom = cl::sample_base(pm, rng);
    CHECK(atom == cl::ParamVector{3.0, 1.0});

    const auto ball = cl::BaseDistribution::uniform_ball(2, 0.7);
    for (int i = 0; i < 2000; ++i) {
        const auto x = cl::sample_base(ball, rng);
        REQUIRE(x.size() == 3);
        CHECK(x.back() == 1.0);
        CHECK(x[0] * x[0] + x[1] * x[1] <= 0.7 * 0.7 + 1e-12);
    }

    const auto box = cl::BaseDistribution::uniform_box(3, 2.5);
    for (int i = 0; i < 2000; ++i) {
        const auto x = cl::sample_base(box, rng);
        for (int j = 0; j < 3; ++j) CHECK(std::fabs(x[j]) <= 2.5);
    }
}

TEST_CASE("gaussian sample mean obeys the CLT bound (4 sigma over 1e5 draws)") {
    cl::RngStream rng(31337, 2);
    const auto dist = cl::BaseDistribution::standard_gaussian(2);
    const int n = 100000;
    double mean0 = 0.0, mean1 = 0.0;
    for (int i = 0; i < n; ++i) {
        const auto x = cl::sample_base(dist, rng);
        mean0 += x[0];
        mean1 += x[1];
    }
    const double bound = 4.0 / std::sqrt(static_cast<double>(n));
    CHECK(std::fabs(mean0 / n) < bound);
    CHECK(std::fabs(mean1 / n) < bound);
}

TEST_CASE("point mass atoms validate weights") {
    CHECK_THROWS_AS(cl::BaseDistribution::point_mass({{{1.0}, 0.6}, {{2.0}, 0.6}}),
                    cl::config_error);
    CHECK_THROWS_AS(cl::BaseDistribution::point_mass({{{1.0}, -0.2}, {{2.0}, 1.2}}),
                    cl::config_error);
    CHECK_THROWS_AS(cl::BaseDistribution::uniform_ball(2, 0.0), cl::config_error);
}

TEST_CASE("directional marginal densities integrate to one") {
    cl::RngStream rng(7, 0);
    struct Case {
        cl::BaseDistribution dist;
        cl::ParamVector direction;
        double lo, hi;
    };
    const Case cases[] = {
        {cl::BaseDistribution::standard_gaussian(2), {0.6, -0.8, 0.0}, -10.0, 10.0},
        {cl::BaseDistribution::standard_gaussian(2), {0.6, -0.3, 0.5}, -10.0, 10.0},
        {cl::BaseDistribution::uniform_box(2, 2.0), {0.0, 1.0, 0.0}, -2.5, 2.5},
        {cl::BaseDistribution::uniform_ball(3, 1.5), {1.0, 1.0, 1.0, 0.0}, -2.0, 2.0},
        {cl::BaseDistribution::uniform_ball(1, 2.0), {1.0, 0.0}, -2.5, 2.5},
    };
    for (const auto& c : cases) {
        const cl::DirectionalMarginal marginal(c.dist, c.direction);
        const auto q = cl::integrate_adaptive(
            [&](double u) { return marginal.weight(u); }, c.lo, c.hi, 1e-10, 1e-12);
        CHECK(q.value == doctest::Approx(1.0).epsilon(1e-7));
    }
}

TEST_CASE("conditional draws pin the directional coordinate exactly") {
    cl::RngStream rng(7, 1);
    const cl::ParamVector dir{0.48, -0.6, 0.64};  // unit
    for (const auto& dist : {cl::BaseDistribution::standard_gaussian(2),
                             cl::BaseDistribution::uniform_ball(2, 3.0)}) {
        const cl::DirectionalMarginal marginal(dist, dir);
        for (double u : {-0.9, 0.1, 1.4}) {
            for (int i = 0; i < 200; ++i) {
                const auto x = marginal.draw_conditional(u, rng);
                REQUIRE(x.size() == 3);
                CHECK(x.back() == 1.0);
                CHECK(cl::dot(x, dir) == doctest::Approx(u).epsilon(1e-12));
            }
        }
    }
    // box requires an axis-aligned direction
    const auto box = cl::BaseDistribution::uniform_box(2, 2.0);
    CHECK_THROWS_AS(cl::DirectionalMarginal(box, cl::ParamVector{0.6, 0.8, 0.0}),
                    cl::unsupported_conditioning_error);
    const cl::DirectionalMarginal axis(box, cl::ParamVector{0.0, -1.0, 0.0});
    const auto x = axis.draw_conditional(0.75, rng);
    CHECK(x[1] == doctest::Approx(-0.75));
    CHECK_THROWS_AS(axis.draw_conditional(5.0, rng), cl::unsupported_conditioning_error);
}

TEST_CASE("ball marginal with d=1 degenerates to the uniform density") {
    const cl::DirectionalMarginal marginal(cl::BaseDistribution::uniform_ball(1, 2.0),
                                           cl::ParamVector{1.0, 0.0});
    CHECK(marginal.weight(0.3) == doctest::Approx(0.25));
    CHECK(marginal.weight(1.99) == doctest::Approx(0.25));
    CHECK(marginal.weight(2.01) == 0.0);
}

TEST_CASE("scalar laws: density matches cdf slope, draws stay in support") {
    cl::RngStream rng(12, 0);
    const cl::ScalarLaw laws[] = {cl::ScalarLaw::gaussian(0.3, 1.7),
                                  cl::ScalarLaw::uniform(-1.0, 2.0),
                                  cl::ScalarLaw::half_gaussian(0.8)};
    for (const auto& law : laws) {
        for (double x : {0.11, 0.52, 1.3}) {
            const double h = 1e-6;
            const double fd = (law.cdf(x + h) - law.cdf(x - h)) / (2 * h);
            CHECK(fd == doctest::Approx(law.density(x)).epsilon(1e-5));
        }
        const double lo = law.lower_tail_bound(1e-10);
        CHECK(law.cdf(lo) <= 1e-10);
        for (int i = 0; i < 1000; ++i) CHECK(law.draw(rng) >= lo);
    }
    // half-Gaussian mean: sigma * sqrt(2/pi)
    const auto half = cl::ScalarLaw::half_gaussian(1.0);
    CHECK(half.mean() == doctest::Approx(std::sqrt(2.0 / 3.14159265358979)).epsilon(1e-6));
}

TEST_CASE("bias-only direction is rejected for continuous families") {
    const auto gauss = cl::BaseDistribution::standard_gaussian(2);
    CHECK_THROWS_AS(cl::DirectionalMarginal(gauss, cl::ParamVector{0.0, 0.0, 1.0}),
                    cl::unsupported_conditioning_error);
}

}  // TEST_SUITE
