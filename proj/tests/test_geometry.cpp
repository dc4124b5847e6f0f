#include <doctest.h>

#include <cmath>
#include <numbers>

#include "curriculum_lab/difficulty.hpp"
#include "curriculum_lab/geometry.hpp"
#include "curriculum_lab/rng.hpp"

namespace cl = curriculum_lab;
using cl::operator-;

TEST_SUITE("geometry") {

TEST_CASE("projection onto the zero-gradient hyperplane") {
    // already on the plane
    cl::LabeledExample on{{2.0, 1.0}, 5.0};
    const cl::ParamVector w{1.0, 3.0};
    CHECK(cl::project_onto_omega(w, on) == w);

    // axis-aligned projection
    cl::LabeledExample axis{{0.0, 1.0}, 2.0};
    const auto z = cl::project_onto_omega({0.0, 0.0}, axis);
    CHECK(z[0] == doctest::Approx(0.0));
    CHECK(z[1] == doctest::Approx(2.0));

    cl::LabeledExample degenerate{{0.0, 0.0}, 1.0};
    CHECK_THROWS_AS(cl::project_onto_omega(w, degenerate), cl::contract_error);
}

TEST_CASE("projection identity: psi^2 == |x|^2 |w_bar - z_bar|^2 on random inputs") {
    cl::RngStream rng(42, 3);
    const auto problem = cl::Problem::regression(0.1);
    for (int i = 0; i < 500; ++i) {
        cl::LabeledExample ex{{rng.normal(), rng.normal(), rng.normal(), 1.0}, rng.normal()};
        cl::ParamVector w_bar{rng.normal(), rng.normal(), rng.normal(), rng.normal()};
        const auto z_bar = cl::project_onto_omega(w_bar, ex);
        CHECK(cl::dot(ex.x, z_bar) == doctest::Approx(ex.y).epsilon(1e-10));
        const double lhs = cl::loss(problem, ex, w_bar);
        const double rhs = cl::squared_norm(ex.x) * cl::squared_norm(w_bar - z_bar);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
    }
}

TEST_CASE("polar decomposition: alignment, orthogonality, antipode") {
    const cl::ParamVector w_bar{1.0, 1.0, 0.0};
    const cl::ParamVector w_t{0.0, 1.0, 0.0};  // zenith = e1, lambda = 1
    CHECK(cl::polar_decompose({0.5, 0.0, 0.0}, w_t, w_bar).cos_theta == doctest::Approx(1.0));
    CHECK(cl::polar_decompose({0.0, 0.7, 0.3}, w_t, w_bar).cos_theta == doctest::Approx(0.0));
    CHECK(cl::polar_decompose({-2.0, 0.0, 0.0}, w_t, w_bar).cos_theta == doctest::Approx(-1.0));
    const auto polar = cl::polar_decompose({3.0, 4.0, 0.0}, w_t, w_bar);
    CHECK(polar.r == doctest::Approx(5.0));
    CHECK(polar.lambda == doctest::Approx(1.0));
    CHECK_THROWS_AS(cl::polar_decompose({1.0, 0.0, 0.0}, w_bar, w_bar),
                    cl::pole_degeneracy_error);
}

TEST_CASE("beta angle") {
    CHECK(cl::beta_angle(1.0, 2.0, 1.0) == doctest::Approx(0.0));          // clamped
    CHECK(cl::beta_angle(1.0, 0.0, 1.0) == doctest::Approx(std::numbers::pi / 2));
    CHECK(cl::beta_angle(2.0, 1.0, 1.0) == doctest::Approx(std::numbers::pi / 3));
}

TEST_CASE("hinge bound B and the chi coordinate") {
    const auto right = cl::make_hinge_frame(0.0, 1.0);
    CHECK(cl::hinge_bound(0.3, right) == doctest::Approx(1.0));
    CHECK(cl::hinge_bound(1.7, right) == doctest::Approx(1.0));

    const auto third = cl::hinge_frame_from_angle(std::numbers::pi / 3);
    CHECK(cl::hinge_bound(1.0, third) == doctest::Approx(1.0 / third.sin_theta));
    const auto quarter = cl::hinge_frame_from_angle(std::numbers::pi / 4);
    CHECK(cl::hinge_bound(1.0, quarter) == doctest::Approx(std::numbers::sqrt2));

    CHECK(cl::hinge_chi(0.4, 0.0, third) == doctest::Approx(cl::hinge_bound(0.4, third)));
    CHECK(cl::hinge_chi(0.9, 0.3, right) == doctest::Approx(0.7));

    // the pinned point has local margin exactly 1 - upsilon
    for (double psi : {0.2, 1.0, 1.6}) {
        for (double ups : {0.1, 0.8}) {
            const double x1 = 1.0 - psi;
            const double x2 = cl::hinge_chi(psi, ups, third);
            const double margin = x1 * third.cos_theta + x2 * third.sin_theta;
            CHECK(1.0 - margin == doctest::Approx(ups).epsilon(1e-10));
        }
    }

    CHECK_THROWS_AS(cl::make_hinge_frame(1.0, 0.0), cl::frame_degeneracy_error);
}

TEST_CASE("region classification: boundaries and direct substitutions") {
    const double psi = 0.8, lambda = 2.0;
    // branch +, lambda*u == -psi: boundary goes to A1 with zero local score
    auto r = cl::region_classify(-psi / lambda, psi, lambda, cl::LabelBranch::Plus);
    CHECK(r.region == cl::RegionTag::A1);
    CHECK(r.upsilon == doctest::Approx(0.0));

    r = cl::region_classify((psi + 0.5) / lambda, psi, lambda, cl::LabelBranch::Minus);
    CHECK(r.region == cl::RegionTag::A3);
    CHECK(r.upsilon == doctest::Approx(0.5));

    r = cl::region_classify((psi - 0.7) / lambda, psi, lambda, cl::LabelBranch::Minus);
    CHECK(r.region == cl::RegionTag::A4);
    CHECK(r.upsilon == doctest::Approx(0.7));
}

TEST_CASE("region round trip for positive local scores") {
    cl::RngStream rng(17, 0);
    const cl::RegionTag tags[] = {cl::RegionTag::A1, cl::RegionTag::A2, cl::RegionTag::A3,
                                  cl::RegionTag::A4};
    for (int i = 0; i < 2000; ++i) {
        const auto tag = tags[rng.uniform_index(4)];
        const double psi = rng.uniform(0.0, 3.0);
        const double ups = rng.uniform(1e-9, 3.0);
        const double lambda = rng.uniform(0.1, 4.0);
        const double u = cl::region_scaled_u(tag, psi, ups) / lambda;
        const auto back = cl::region_classify(u, psi, lambda, cl::region_branch(tag));
        CHECK(back.region == tag);
        CHECK(back.upsilon == doctest::Approx(ups).epsilon(1e-9));
    }
    // at upsilon == 0 the tie collapses onto the first-listed region
    const auto tie = cl::region_classify(-1.0, 1.0, 1.0, cl::LabelBranch::Plus);
    CHECK(tie.region == cl::RegionTag::A1);
    const auto tie2 = cl::region_classify(1.0, 1.0, 1.0, cl::LabelBranch::Minus);
    CHECK(tie2.region == cl::RegionTag::A3);
}

TEST_CASE("halfspace agreement: sign(1 - x.w_t) == sign(B(psi) - x2) on 1e4 draws") {
    cl::RngStream rng(55, 0);
    const auto frame = cl::hinge_frame_from_angle(1.1);
    const cl::ParamVector w_t{frame.cos_theta, frame.sin_theta, 0.0};
    for (int i = 0; i < 10000; ++i) {
        const double psi = rng.uniform(0.0, 2.0);
        const double x2 = rng.uniform(-4.0, 4.0);
        const cl::ParamVector x{1.0 - psi, x2, rng.normal()};
        const double margin_gap = 1.0 - cl::dot(x, w_t);
        const double bound_gap = cl::hinge_bound(psi, frame) - x2;
        if (std::fabs(margin_gap) < 1e-12) continue;
        CHECK((margin_gap > 0) == (bound_gap > 0));
    }
}

}  // TEST_SUITE
