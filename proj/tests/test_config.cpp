#include <doctest.h>

#include <string>

#include "edsim/config.hpp"

using namespace edsim;

TEST_CASE("empty config yields the built-in defaults") {
  RunConfig cfg = parse_config("");
  CHECK(cfg.scenario.replications == 60);
  CHECK(cfg.scenario.horizon_minutes == 21 * 24 * 60);
  CHECK(cfg.scenario.warmup_minutes == 2 * 24 * 60);
  CHECK(cfg.scenario.model.order_profiles[2][0] == doctest::Approx(0.36));
  CHECK(cfg.scenario.model.interaction_times[0][0].min > 0);
  CHECK(cfg.validation_targets[1] == 261);
}

TEST_CASE("defaults round-trip through emit and parse") {
  RunConfig reparsed = parse_config(emit_defaults());
  RunConfig builtin;
  CHECK(reparsed.scenario.base_seed == builtin.scenario.base_seed);
  CHECK(reparsed.scenario.replications == builtin.scenario.replications);
  for (int e = 0; e < 5; ++e) {
    CHECK(reparsed.scenario.model.esi_mix[e] == builtin.scenario.model.esi_mix[e]);
    for (int k = 0; k < 4; ++k) {
      CHECK(reparsed.scenario.model.order_profiles[e][k] ==
            builtin.scenario.model.order_profiles[e][k]);
    }
    CHECK(reparsed.scenario.model.admit_probability[e] ==
          builtin.scenario.model.admit_probability[e]);
  }
  CHECK(reparsed.scenario.model.pods.size() == builtin.scenario.model.pods.size());
  CHECK(reparsed.scenario.model.charting_scale == builtin.scenario.model.charting_scale);
  CHECK(reparsed.scenario.model.imaging_scale == builtin.scenario.model.imaging_scale);
}

TEST_CASE("unknown keys are rejected with their path") {
  try {
    parse_config(R"({"model": {"imaging": {"order_to_start": [1, 2, 3]}}})");
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("model.imaging.order_to_start") != std::string::npos);
  }
}

TEST_CASE("malformed syntax is a ParseError") {
  CHECK_THROWS_AS(parse_config("{not json"), ParseError);
  CHECK_THROWS_AS(parse_config("[1, 2, 3]"), ParseError);
}

TEST_CASE("triangle with mode above max is rejected") {
  CHECK_THROWS_AS(parse_config(R"({"model": {"triage_time": [15, 17, 16]}})"),
                  ValidationError);
}

TEST_CASE("order pmf must sum to one") {
  try {
    parse_config(R"({"model": {"order_profiles": {"esi3": [0.3, 0.3, 0.2, 0.1]}}})");
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("esi3") != std::string::npos);
  }
}

TEST_CASE("non-trauma pod cannot accept ESI 1") {
  std::string text = R"({"model": {"pods": [
    {"beds": 10, "trauma_capable": false, "accepts": [1, 2, 3],
     "shifts": [{"start_hour": 0, "end_hour": 24, "physicians": 1}]}
  ]}})";
  CHECK_THROWS_AS(parse_config(text), ValidationError);
}

TEST_CASE("scenario reductions outside the unit interval are rejected") {
  CHECK_THROWS_AS(parse_config(R"({"scenario": {"r_otb": 1.5}})"), ValidationError);
  CHECK_THROWS_AS(parse_config(R"({"scenario": {"r_etr": -0.1}})"), ValidationError);
}

TEST_CASE("overrides land in the right fields") {
  RunConfig cfg = parse_config(
      R"({"seed": 99, "replications": 5,
          "scenario": {"r_otb": 0.2, "r_etr": 0.1},
          "validation_targets": [100, 200, 300, 400, 500]})");
  CHECK(cfg.scenario.base_seed == 99);
  CHECK(cfg.scenario.replications == 5);
  CHECK(cfg.scenario.r_otb == doctest::Approx(0.2));
  CHECK(cfg.scenario.r_etr == doctest::Approx(0.1));
  CHECK(cfg.validation_targets[4] == 500);
}

TEST_CASE("csv numbers are fixed precision and locale independent") {
  CHECK(csv_number(3.5, 1) == "3.5");
  CHECK(csv_number(100.0, 1) == "100.0");
  CHECK(csv_number(0.04321, 4) == "0.0432");
  CHECK(csv_number(-2.0, 1) == "-2.0");
  CHECK(csv_number(0.0, 4) == "0.0000");
}
