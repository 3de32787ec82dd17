#include <doctest.h>

#include <cmath>

#include "edsim/distributions.hpp"
#include "edsim/params.hpp"

using namespace edsim;

TEST_CASE("triangular inverse CDF hits the known anchor points") {
  CHECK(TriangularDist(13, 14, 15).quantile(0.5) == doctest::Approx(14.0));
  CHECK(TriangularDist(10, 25, 55).quantile(0.0) == doctest::Approx(10.0));
  CHECK(TriangularDist(10, 25, 55).quantile(1.0) == doctest::Approx(55.0));
}

TEST_CASE("triangular parameter validation") {
  CHECK_THROWS_AS(TriangularDist(15, 17, 16), DistributionError);
  CHECK_THROWS_AS(TriangularDist(5, 5, 5), DistributionError);
}

TEST_CASE("triangular Monte Carlo mean matches (a+m+b)/3") {
  TriangularDist d(15, 16, 17);
  RngStream s(99, "tria-mc");
  double sum = 0.0;
  const int n = 1'000'000;
  for (int i = 0; i < n; ++i) {
    double x = d.sample(s);
    CHECK(x >= 15.0);
    CHECK(x <= 17.0);
    sum += x;
  }
  CHECK(sum / n == doctest::Approx(16.0).epsilon(0.000625));  // +/- 0.01
}

TEST_CASE("categorical matches the configured pmf") {
  ModelParams p = default_params();
  CategoricalDist mix({1, 2, 3, 4, 5},
                      {p.esi_mix[0], p.esi_mix[1], p.esi_mix[2], p.esi_mix[3], p.esi_mix[4]});
  CHECK(mix.probability_of(3) == doctest::Approx(0.472));

  RngStream s(5, "esi-mc");
  const int n = 1'000'000;
  std::array<int, 5> counts{};
  for (int i = 0; i < n; ++i) counts[mix.sample(s) - 1]++;
  for (int e = 0; e < 5; ++e) {
    CHECK(std::fabs(static_cast<double>(counts[e]) / n - p.esi_mix[e]) < 0.002);
  }
}

TEST_CASE("degenerate categorical always returns its only label") {
  CategoricalDist d({7}, {1.0});
  RngStream s(1, "degenerate");
  for (int i = 0; i < 100; ++i) CHECK(d.sample(s) == 7);
}

TEST_CASE("constant-rate profile gives exponential gaps with the right mean") {
  std::vector<std::vector<double>> rates(7, std::vector<double>(24, 6.0));
  ArrivalProfile profile(std::move(rates));
  RngStream s(3, "thinning-mean");
  double t = 0.0, sum = 0.0;
  const int n = 100'000;
  for (int i = 0; i < n; ++i) {
    double next = profile.next_arrival(t, s);
    sum += next - t;
    t = next;
  }
  CHECK(sum / n == doctest::Approx(10.0).epsilon(0.02));  // +/- 0.2 min
}

TEST_CASE("zero-rate interval produces no arrivals inside it") {
  std::vector<std::vector<double>> rates(7, std::vector<double>(24, 12.0));
  rates[0][0] = 0.0;  // minutes [0, 60) of Monday
  ArrivalProfile profile(std::move(rates));
  RngStream s(4, "thinning-zero");
  for (int i = 0; i < 200; ++i) CHECK(profile.next_arrival(0.0, s) >= 60.0);
}

TEST_CASE("all-zero profile cannot produce an arrival") {
  std::vector<std::vector<double>> rates(7, std::vector<double>(24, 0.0));
  ArrivalProfile profile(std::move(rates));
  RngStream s(4, "thinning-none");
  CHECK_THROWS_AS(profile.next_arrival(0.0, s), NoArrivalError);
}

TEST_CASE("default profile daily volume is consistent with the annual census") {
  ModelParams p = default_params();
  ArrivalProfile profile = p.arrival_profile();
  double weekly = 0.0;
  for (int d = 0; d < 7; ++d) {
    weekly += profile.daily_total(d);
    if (d < 5) CHECK(profile.daily_total(d) >= profile.daily_total(5));
  }
  double annual = weekly / 7.0 * 365.0;
  CHECK(annual > 100'000);
  CHECK(annual < 120'000);
  // Monday is the busiest day
  for (int d = 1; d < 7; ++d) CHECK(profile.daily_total(0) > profile.daily_total(d));
}

TEST_CASE("stream forks are deterministic, name- and seed-sensitive") {
  auto a1 = fork_stream(42, "arrivals");
  auto a2 = fork_stream(42, "arrivals");
  auto img = fork_stream(42, "imaging");
  auto other_seed = fork_stream(43, "arrivals");
  bool name_differs = false, seed_differs = false;
  for (int i = 0; i < 100; ++i) {
    uint64_t x = a1.next_u64();
    CHECK(x == a2.next_u64());
    name_differs |= x != img.next_u64();
    seed_differs |= x != other_seed.next_u64();
  }
  CHECK(name_differs);
  CHECK(seed_differs);
}

TEST_CASE("draws on one stream never move another") {
  auto a = fork_stream(42, "arrivals");
  auto b1 = fork_stream(42, "imaging");
  auto b2 = fork_stream(42, "imaging");
  for (int i = 0; i < 50; ++i) a.next_u64();  // burn stream A
  for (int i = 0; i < 100; ++i) CHECK(b1.next_u64() == b2.next_u64());
}
