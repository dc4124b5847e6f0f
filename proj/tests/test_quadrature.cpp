#include <doctest.h>

#include <cmath>
#include <numbers>

#include "curriculum_lab/distributions.hpp"
#include "curriculum_lab/estimators.hpp"
#include "curriculum_lab/quadrature.hpp"

namespace cl = curriculum_lab;

TEST_SUITE("quadrature") {

TEST_CASE("polynomials and smooth integrands") {
    const auto cubic = [](double x) { return x * x * x - 2.0 * x + 1.0; };
    // exact: x^4/4 - x^2 + x over [0, 2] = 4 - 4 + 2
    CHECK(cl::integrate_adaptive(cubic, 0.0, 2.0).value == doctest::Approx(2.0).epsilon(1e-12));

    const auto gauss = [](double x) { return cl::normal_pdf(x); };
    CHECK(cl::integrate_adaptive(gauss, -9.0, 1.0).value ==
          doctest::Approx(cl::normal_cdf(1.0)).epsilon(1e-10));

    CHECK(cl::integrate_adaptive(gauss, 1.0, 1.0).value == 0.0);
}

TEST_CASE("discontinuous density edges are handled by bisection") {
    const auto step = [](double x) { return x >= 0.25 && x <= 0.5 ? 4.0 : 0.0; };
    CHECK(cl::integrate_adaptive(step, 0.0, 1.0, 1e-10, 1e-12).value ==
          doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("hinge quadrature: right-angle frame reduces to the cdf") {
    const auto frame = cl::make_hinge_frame(0.0, 1.0);
    const auto law = cl::ScalarLaw::gaussian(0.0, 1.0);
    for (double psi : {0.2, 0.8, 1.5}) {
        const double eta = 1e-3;
        // B(psi) == 1, integrand eta (1 - psi): Delta == eta (1-psi) Phi(1)
        CHECK(cl::quad_delta_hinge(law, frame, psi, eta) ==
              doctest::Approx(eta * (1.0 - psi) * cl::normal_cdf(1.0)).epsilon(1e-10));
    }
}

TEST_CASE("hinge quadrature: empty integration region gives exactly zero") {
    const auto frame = cl::hinge_frame_from_angle(std::numbers::pi / 3);
    const double B = cl::hinge_bound(0.4, frame);
    const auto above = cl::ScalarLaw::uniform(B + 0.1, B + 0.6);
    CHECK(cl::quad_delta_hinge(above, frame, 0.4, 1e-3) == 0.0);
}

TEST_CASE("hinge quadrature matches the closed form for a uniform marginal") {
    const auto frame = cl::hinge_frame_from_angle(std::numbers::pi / 3);
    const double psi = 0.8, eta = 1e-3;
    const double B = cl::hinge_bound(psi, frame);
    const double lo = B - 1.2, hi = B + 0.9;  // support straddles the bound
    const auto law = cl::ScalarLaw::uniform(lo, hi);
    // integral of eta ((1-psi) sin^2 - x sin cos) / (hi-lo) over [lo, B]
    const double s = frame.sin_theta, c = frame.cos_theta;
    const double expected =
        eta / (hi - lo) *
        ((1.0 - psi) * s * s * (B - lo) - 0.5 * s * c * (B * B - lo * lo));
    CHECK(cl::quad_delta_hinge(law, frame, psi, eta) ==
          doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("point-mass marginals are rejected") {
    const auto frame = cl::hinge_frame_from_angle(1.0);
    CHECK_THROWS_AS(cl::quad_delta_hinge(cl::ScalarLaw::point_mass(0.0), frame, 0.5, 1e-3),
                    cl::contract_error);
}

}  // TEST_SUITE
