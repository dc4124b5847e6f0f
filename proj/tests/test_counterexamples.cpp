#include <doctest.h>

#include <cmath>
#include <numbers>

#include "curriculum_lab/counterexamples.hpp"

namespace cl = curriculum_lab;
using cl::operator-;

TEST_SUITE("counterexamples") {

TEST_CASE("fixed-local rate at the optimum is -E[(2 eta r upsilon)^2]") {
    const auto dist = cl::BaseDistribution::standard_gaussian(2);
    const cl::ParamVector w_bar{0.8, -0.5, 0.3};
    const double upsilon = 1.0, eta = 1e-2;
    cl::McOptions opt;
    opt.n = 100000;
    opt.seed = 3;
    const auto est = cl::mc_delta_regression_fixed_local(
        dist, w_bar, w_bar, upsilon, eta, cl::ScalarLaw::gaussian(0.0, 1.0), opt);
    // E[r^2] = d + 1 = 3 for standard Gaussian features plus bias
    const double expected = -4.0 * eta * eta * upsilon * upsilon * 3.0;
    CHECK(est.mean < 0.0);
    CHECK(std::fabs(est.mean - expected) < 4.0 * est.std_error);
}

TEST_CASE("local-preference search finds a witness beating the quantitative bound") {
    cl::LocalPreferenceOptions opt;
    opt.mc.n = 50000;
    opt.mc.seed = 20260808;
    const auto dist = cl::BaseDistribution::standard_gaussian(2);
    const cl::ParamVector w_bar{0.8, -0.5, 0.3};
    const auto report = cl::build_local_preference_counterexample(dist, w_bar, 1.0, 1e-2, opt);
    CHECK(report.verdict);
    CHECK(report.delta_found <= 1.0);
    CHECK(report.delta_found > 0.0);
    CHECK(report.bound == doctest::Approx(-2e-4 * 3.0));
    CHECK(report.delta_at_witness.mean <
          report.bound + 3.0 * report.delta_at_witness.std_error);
    CHECK(report.delta_at_witness.mean + 3.0 * report.delta_at_witness.std_error < 0.0);
    CHECK(cl::norm(report.w_witness - w_bar) == doctest::Approx(report.delta_found));

    // bit-for-bit reproducible from (seed, parameters)
    const auto again = cl::build_local_preference_counterexample(dist, w_bar, 1.0, 1e-2, opt);
    CHECK(again.delta_found == report.delta_found);
    CHECK(again.delta_at_witness.mean == report.delta_at_witness.mean);
    CHECK(again.delta_at_witness.std_error == report.delta_at_witness.std_error);
}

TEST_CASE("local-preference preconditions") {
    const auto pm = cl::BaseDistribution::point_mass({{{1.0}, 1.0}});
    cl::LocalPreferenceOptions opt;
    CHECK_THROWS_AS(cl::build_local_preference_counterexample(pm, {0.0, 0.0}, 1.0, 1e-2, opt), cl::contract_error);
    const auto gauss = cl::BaseDistribution::standard_gaussian(2);
    CHECK_THROWS_AS(cl::build_local_preference_counterexample(gauss, {0.0, 0.0, 0.0}, 0.0, 1e-2, opt),
                    cl::contract_error);
}

TEST_CASE("hinge low-psi counterexample: zero at psi1, positive at psi2") {
    const auto frame = cl::hinge_frame_from_angle(std::numbers::pi / 3);
    cl::HingeLowPsiOptions opt;
    opt.mc.n = 50000;
    opt.mc.seed = 20260808;
    const auto report = cl::build_hinge_low_psi(frame, 0.1, 0.4, opt);
    CHECK(report.verdict);
    CHECK(report.delta_psi1_quad == 0.0);
    CHECK(report.delta_psi1_mc.mean == 0.0);
    CHECK(report.delta_psi1_mc.std_error == 0.0);
    CHECK(report.delta_psi2_mc.mean > 3.0 * report.delta_psi2_mc.std_error);
    CHECK(report.delta_psi2_quad > 0.0);
    CHECK(report.integrand_positive);
    CHECK(report.bound_lo < report.bound_hi);
    // MC at psi2 agrees with its own quadrature
    CHECK(std::fabs(report.delta_psi2_mc.mean - report.delta_psi2_quad) <
          3.0 * report.delta_psi2_mc.std_error + 1e-6);
}

TEST_CASE("hinge low-psi preconditions: ordering and the cos(theta) range") {
    cl::HingeLowPsiOptions opt;
    const auto frame = cl::hinge_frame_from_angle(std::numbers::pi / 3);
    CHECK_THROWS_AS(cl::build_hinge_low_psi(frame, 0.4, 0.1, opt), cl::contract_error);
    CHECK_THROWS_AS(cl::build_hinge_low_psi(frame, 0.1, 0.6, opt), cl::contract_error);
    const auto obtuse = cl::hinge_frame_from_angle(2.0 * std::numbers::pi / 3.0);
    CHECK_THROWS_AS(cl::build_hinge_low_psi(obtuse, 0.1, 0.4, opt), cl::contract_error);
}

}  // TEST_SUITE
