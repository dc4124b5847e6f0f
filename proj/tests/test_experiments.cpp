#include <doctest.h>

#include <numbers>
#include <sstream>

#include "curriculum_lab/experiments.hpp"

namespace cl = curriculum_lab;

TEST_SUITE("experiments") {

TEST_CASE("sweep: single grid point yields a single row with the fixed header") {
    cl::SweepConfig cfg;
    cfg.psi = {0.5};
    cfg.n = 20000;
    const auto rows = cl::run_sweep(cfg, 7, 1);
    REQUIRE(rows.size() == 1);
    std::ostringstream csv;
    cl::write_sweep_csv(csv, rows);
    const std::string text = csv.str();
    CHECK(text.rfind("problem,psi,upsilon,lambda_or_theta,eta,n,delta_mc,delta_se,"
                     "delta_closed,method\n", 0) == 0);
    CHECK(text.find("regression,") != std::string::npos);
    // LF endings only
    CHECK(text.find('\r') == std::string::npos);
}

TEST_CASE("sweep: regression closed column reproduces the moment formula") {
    cl::SweepConfig cfg;
    cfg.psi = {0.0, 1.0};
    cfg.lambda = 1.0;
    cfg.eta = 0.01;
    cfg.dim = 2;
    cfg.n = 50000;
    const auto rows = cl::run_sweep(cfg, 11, 1);
    REQUIRE(rows.size() == 2);
    // exact moments for the Gaussian axis geometry: (d+1, 1, d+3)
    const auto m = cl::gaussian_axis_moments(2);
    for (const auto& row : rows) {
        REQUIRE(row.delta_closed.has_value());
        const double direct = cl::closed_delta_regression(m, row.psi, 1.0, 0.01);
        CHECK(*row.delta_closed == doctest::Approx(direct).epsilon(0.05));
        REQUIRE(row.delta_mc.has_value());
        CHECK(std::fabs(*row.delta_mc - direct) < 5.0 * *row.delta_se);
    }
}

TEST_CASE("sweep: hinge local column is constant in upsilon at theta == pi/2") {
    cl::SweepConfig cfg;
    cfg.problem = "hinge";
    cfg.mode = "local";
    cfg.psi = {0.5};
    cfg.upsilon = {0.3, 0.9, 1.5};
    cfg.theta = std::numbers::pi / 2.0;
    cfg.n = 5000;
    const auto rows = cl::run_sweep(cfg, 13, 1);
    REQUIRE(rows.size() == 3);
    for (const auto& row : rows) {
        CHECK(*row.delta_closed == doctest::Approx(*rows.front().delta_closed).epsilon(1e-9));
        CHECK(row.method == "ClosedForm");
    }
}

TEST_CASE("sweep output is byte-identical across repeated runs") {
    cl::SweepConfig cfg;
    cfg.problem = "hinge";
    cfg.psi = {0.4, 0.8};
    cfg.n = 20000;
    std::ostringstream a, b;
    cl::write_sweep_csv(a, cl::run_sweep(cfg, 99, 2));
    cl::write_sweep_csv(b, cl::run_sweep(cfg, 99, 2));
    CHECK(a.str() == b.str());
    CHECK(a.str() != [&] {
        std::ostringstream c;
        cl::write_sweep_csv(c, cl::run_sweep(cfg, 100, 2));
        return c.str();
    }());
}

TEST_CASE("race: single policy has no comparison block; pairs get sign tests") {
    cl::RaceConfig cfg;
    cfg.policies = {"uniform"};
    cfg.pool_size = 64;
    cfg.steps = 50;
    cfg.record_at = 50;
    cfg.record_stride = 25;
    cfg.seeds = 3;
    const auto solo = cl::run_race(cfg, 5);
    CHECK(!solo.summary.contains("comparisons"));
    CHECK(solo.trajectories.size() > 0);

    cfg.policies = {"curriculum", "anti-curriculum"};
    const auto duo = cl::run_race(cfg, 5);
    REQUIRE(duo.summary.contains("comparisons"));
    const auto& comparison = duo.summary.at("comparisons").at(0);
    CHECK(comparison.at("seeds").get<int>() == 3);
    CHECK(comparison.at("sign_test_p").get<double>() <= 1.0);
}

TEST_CASE("race output is byte-identical across invocations with one seed") {
    cl::RaceConfig cfg;
    cfg.policies = {"curriculum", "self-paced"};
    cfg.pool_size = 128;
    cfg.steps = 80;
    cfg.record_at = 80;
    cfg.record_stride = 20;
    cfg.seeds = 4;
    cfg.eval_subset = 32;
    const auto a = cl::run_race(cfg, 77);
    const auto b = cl::run_race(cfg, 77);
    CHECK(a.summary.dump() == b.summary.dump());
    REQUIRE(a.trajectories.size() == b.trajectories.size());
    std::ostringstream csv_a, csv_b;
    cl::write_trajectory_csv(csv_a, a.trajectories);
    cl::write_trajectory_csv(csv_b, b.trajectories);
    CHECK(csv_a.str() == csv_b.str());
}

TEST_CASE("counterexample reports validate and round-trip through JSON") {
    cl::CounterexampleConfig cfg;
    cfg.mode = "hinge_low_psi";
    cfg.n = 20000;
    const cl::json report = cl::run_counterexample(cfg, 21, 1);
    CHECK(cl::validate_counterexample_report(report));
    const cl::json reparsed = cl::json::parse(report.dump());
    CHECK(cl::validate_counterexample_report(reparsed));
    CHECK(reparsed.at("verdict").get<bool>());

    cl::json broken = report;
    broken.erase("psi1");
    CHECK(!cl::validate_counterexample_report(broken));
}

TEST_CASE("config parsing rejects invalid values") {
    CHECK_THROWS_AS(cl::SweepConfig::from_json({{"problem", "svm"}}), cl::config_error);
    CHECK_THROWS_AS(cl::SweepConfig::from_json({{"eta", -1.0}}), cl::config_error);
    CHECK_THROWS_AS(cl::SweepConfig::from_json({{"psi", cl::json::array()}}), cl::config_error);
    CHECK_THROWS_AS(cl::RaceConfig::from_json({{"policies", {"sorted"}}}), cl::config_error);
    CHECK_THROWS_AS(cl::CounterexampleConfig::from_json({{"mode", "nope"}}), cl::config_error);
    CHECK_NOTHROW(cl::SweepConfig::from_json(cl::json::object()));
}

TEST_CASE("serialization refuses non-finite values and hashes are stable") {
    CHECK_THROWS_AS(cl::format_double(std::nan("")), cl::error);
    CHECK_THROWS_AS(cl::checked_finite(INFINITY, "x"), cl::error);
    CHECK(cl::fnv1a_hash("abc") == cl::fnv1a_hash("abc"));
    CHECK(cl::fnv1a_hash("abc") != cl::fnv1a_hash("abd"));
    CHECK(cl::hash_hex(0x1234).size() == 16);
}

}  // TEST_SUITE
