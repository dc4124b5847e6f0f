#include <doctest.h>

#include <cmath>
#include <vector>

#include "curriculum_lab/rng.hpp"
#include "curriculum_lab/stats.hpp"

namespace cl = curriculum_lab;

TEST_SUITE("stats") {

TEST_CASE("running stat matches direct mean and variance") {
    const std::vector<double> xs{1.0, 4.0, -2.0, 0.5, 3.25, -1.75};
    cl::RunningStat stat;
    for (double x : xs) stat.add(x);
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= xs.size();
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    var /= (xs.size() - 1);
    CHECK(stat.mean == doctest::Approx(mean).epsilon(1e-14));
    CHECK(stat.variance() == doctest::Approx(var).epsilon(1e-14));
    CHECK(stat.std_error() == doctest::Approx(std::sqrt(var / xs.size())).epsilon(1e-14));
}

TEST_CASE("chunk merges reproduce the pooled statistics") {
    cl::RngStream rng(3, 0);
    std::vector<double> xs(999);
    for (auto& x : xs) x = rng.normal();
    cl::RunningStat whole;
    for (double x : xs) whole.add(x);
    cl::RunningStat merged, a, b, c;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        (i < 300 ? a : i < 600 ? b : c).add(xs[i]);
    }
    merged.merge(a);
    merged.merge(b);
    merged.merge(c);
    CHECK(merged.n == whole.n);
    CHECK(merged.mean == doctest::Approx(whole.mean).epsilon(1e-13));
    CHECK(merged.variance() == doctest::Approx(whole.variance()).epsilon(1e-12));
}

TEST_CASE("two-sample KS: same law small, shifted law large") {
    cl::RngStream rng(9, 0);
    std::vector<double> a(20000), b(20000), shifted(20000);
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] = rng.normal();
        b[i] = rng.normal();
        shifted[i] = rng.normal() + 0.08;
    }
    const double crit = cl::ks_critical(0.01, a.size(), b.size());
    CHECK(cl::ks_two_sample(a, b) < crit);
    CHECK(cl::ks_two_sample(a, shifted) > crit);
}

TEST_CASE("sign test tail probabilities") {
    CHECK(cl::sign_test_p_value(50, 100) > 0.4);
    CHECK(cl::sign_test_p_value(100, 100) < 1e-29);
    // the p < 0.01 threshold for 100 paired seeds sits at 63 wins
    CHECK(cl::sign_test_p_value(63, 100) < 0.01);
    CHECK(cl::sign_test_p_value(62, 100) >= 0.01);
    CHECK(cl::sign_test_p_value(0, 100) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("normal pdf and cdf basics") {
    CHECK(cl::normal_cdf(0.0) == doctest::Approx(0.5));
    CHECK(cl::normal_pdf(0.0) == doctest::Approx(1.0 / std::sqrt(2.0 * 3.141592653589793)));
    CHECK(cl::normal_cdf(8.0) == doctest::Approx(1.0));
    CHECK(cl::normal_cdf(-8.0) == doctest::Approx(0.0).epsilon(1e-14));
}

}  // TEST_SUITE
