#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "edsim/stats.hpp"

using namespace edsim;

TEST_CASE("t quantile matches published table values") {
  // two-sided 95% critical values
  CHECK(t_quantile(0.975, 1) == doctest::Approx(12.7062).epsilon(1e-4));
  CHECK(t_quantile(0.975, 10) == doctest::Approx(2.2281).epsilon(1e-4));
  CHECK(t_quantile(0.975, 59) == doctest::Approx(2.0010).epsilon(5e-4));
  CHECK(t_quantile(0.95, 30) == doctest::Approx(1.6973).epsilon(1e-4));
  CHECK(t_quantile(0.5, 7) == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
}

TEST_CASE("t cdf is symmetric and inverts the quantile") {
  CHECK(t_cdf(0.0, 12) == doctest::Approx(0.5));
  for (double p : {0.6, 0.8, 0.95, 0.99}) {
    for (double df : {3.0, 20.0, 59.0}) {
      CHECK(t_cdf(t_quantile(p, df), df) == doctest::Approx(p).epsilon(1e-7));
      CHECK(t_cdf(-t_quantile(p, df), df) == doctest::Approx(1 - p).epsilon(1e-7));
    }
  }
}

TEST_CASE("quantile rejects out-of-range arguments") {
  CHECK_THROWS_AS(t_quantile(0.0, 10), DomainError);
  CHECK_THROWS_AS(t_quantile(1.0, 10), DomainError);
  CHECK_THROWS_AS(t_quantile(0.975, 0), DomainError);
}

TEST_CASE("mean CI of 1..5 has the hand-computed half width") {
  std::vector<double> xs = {1, 2, 3, 4, 5};
  auto ci = mean_ci(xs);
  CHECK(ci.mean == doctest::Approx(3.0));
  // t(.975, 4) * sqrt(2.5 / 5) = 2.7764 * 0.70711
  CHECK(ci.half_width == doctest::Approx(1.9633).epsilon(1e-3));
  CHECK(ci.n == 5);
}

TEST_CASE("mean CI needs at least two samples") {
  std::vector<double> one = {3.5};
  CHECK_THROWS_AS(mean_ci(one), InsufficientDataError);
}

TEST_CASE("Welch test on a classic equal-variance pair") {
  std::vector<double> a = {1, 2, 3, 4, 5};
  std::vector<double> b = {2, 3, 4, 5, 6};
  auto r = welch_t(a, b);
  CHECK(r.statistic == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(r.degrees_of_freedom == doctest::Approx(8.0).epsilon(1e-9));
  CHECK(r.p_value == doctest::Approx(0.3466).epsilon(1e-3));
  CHECK(!r.significant);
}

TEST_CASE("Welch test detects a clear shift") {
  std::vector<double> a = {10.1, 10.2, 9.9, 10.0, 10.1, 9.8};
  std::vector<double> b = {12.1, 12.0, 11.9, 12.2, 12.1, 11.8};
  auto r = welch_t(a, b);
  CHECK(r.p_value < 1e-6);
  CHECK(r.significant);
}

TEST_CASE("paired test hand-checked example") {
  std::vector<double> d = {1, 2, 3, 1, 2, 3};
  auto r = paired_t(d);
  // mean 2, sd sqrt(0.8), t = 2 / (sd / sqrt(6))
  CHECK(r.statistic == doctest::Approx(5.4772).epsilon(1e-4));
  CHECK(r.degrees_of_freedom == doctest::Approx(5.0));
  CHECK(r.p_value < 0.01);
  CHECK(r.significant);
}

TEST_CASE("degenerate paired diffs follow the documented contract") {
  std::vector<double> zeros(10, 0.0);
  auto r0 = paired_t(zeros);
  CHECK(r0.p_value == 1.0);
  CHECK(!r0.significant);

  std::vector<double> fives(10, 5.0);
  auto r5 = paired_t(fives);
  CHECK(r5.p_value == 0.0);
  CHECK(r5.significant);
}

TEST_CASE("sample moments") {
  std::vector<double> xs = {2, 4, 4, 4, 5, 5, 7, 9};
  CHECK(sample_mean(xs) == doctest::Approx(5.0));
  CHECK(sample_sd(xs) == doctest::Approx(std::sqrt(32.0 / 7.0)));
}
