#include "edsim/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace edsim {

ModelParams ScenarioConfig::effective_params() const {
  ModelParams p = model;
  p.reduction_otb = r_otb;
  p.reduction_etr = r_etr;
  if (order_profile_override) p.order_profiles = *order_profile_override;
  return p;
}

ReplicationSummary summarize(const std::vector<PatientRecord>& records,
                             double warmup_end) {
  ReplicationSummary s;
  std::array<double, 5> sums{};
  double bd = 0.0, dd = 0.0, share = 0.0;
  std::array<double, 4> esi3_sums{};
  for (const PatientRecord& r : records) {
    if (r.bed_assigned < warmup_end) continue;
    sums[r.esi - 1] += r.time_in_ed;
    s.count_by_esi[r.esi - 1] += 1;
    bd += r.bed_to_disposition;
    dd += r.disposition_to_departure;
    if (r.time_in_ed > 0) share += r.face_time / r.time_in_ed;
    if (r.esi == 3 && r.order_count <= 3) {
      esi3_sums[r.order_count] += r.time_in_ed;
      s.esi3_count_by_orders[r.order_count] += 1;
    }
  }
  double grand = 0.0;
  for (int i = 0; i < 5; ++i) {
    s.total_patients += s.count_by_esi[i];
    grand += sums[i];
    s.mean_by_esi[i] = s.count_by_esi[i] ? sums[i] / s.count_by_esi[i] : 0.0;
  }
  if (s.total_patients > 0) {
    s.overall_mean = grand / s.total_patients;
    s.mean_bed_to_dispo = bd / s.total_patients;
    s.mean_dispo_to_departure = dd / s.total_patients;
    s.mean_direct_care_share = share / s.total_patients;
  }
  for (int k = 0; k < 4; ++k) {
    s.esi3_mean_by_orders[k] =
        s.esi3_count_by_orders[k] ? esi3_sums[k] / s.esi3_count_by_orders[k] : 0.0;
  }
  return s;
}

ReplicationSummary run_replication(const ScenarioConfig& config, int replication) {
  EdModel model(config.effective_params(), config.base_seed,
                static_cast<uint64_t>(replication));
  model.run(config.warmup_minutes + config.horizon_minutes);
  return summarize(model.records(), config.warmup_minutes);
}

ScenarioResult run_scenario(const ScenarioConfig& config, int jobs) {
  ScenarioResult result;
  result.replications.resize(config.replications);
  jobs = std::max(1, jobs);
  if (jobs == 1) {
    for (int i = 0; i < config.replications; ++i) {
      result.replications[i] = run_replication(config, i);
    }
  } else {
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int w = 0; w < jobs; ++w) {
      pool.emplace_back([&] {
        while (true) {
          int i = next.fetch_add(1);
          if (i >= config.replications) return;
          result.replications[i] = run_replication(config, i);
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  std::vector<double> overall;
  std::array<std::vector<double>, 5> per_esi;
  for (const auto& rep : result.replications) {
    overall.push_back(rep.overall_mean);
    for (int i = 0; i < 5; ++i) per_esi[i].push_back(rep.mean_by_esi[i]);
  }
  result.overall = mean_ci(overall);
  for (int i = 0; i < 5; ++i) result.by_esi[i] = mean_ci(per_esi[i]);
  return result;
}

std::vector<SweepRow> sweep_delays(const std::vector<double>& levels,
                                   const std::string& dimension,
                                   const ScenarioConfig& config, int jobs) {
  ScenarioConfig base = config;
  base.r_otb = 0.0;
  base.r_etr = 0.0;
  ScenarioResult baseline = run_scenario(base, jobs);

  std::vector<SweepRow> rows;
  for (double level : levels) {
    ScenarioConfig variant = base;
    if (dimension == "otb" || dimension == "both") variant.r_otb = level;
    if (dimension == "etr" || dimension == "both") variant.r_etr = level;
    if (dimension != "otb" && dimension != "etr" && dimension != "both") {
      throw std::invalid_argument("sweep dimension must be otb, etr or both");
    }
    ScenarioResult res = run_scenario(variant, jobs);

    SweepRow row;
    row.level = level;
    row.dimension = dimension;
    for (int i = 0; i < config.replications; ++i) {
      row.paired_diffs.push_back(baseline.replications[i].overall_mean -
                                 res.replications[i].overall_mean);
    }
    row.reduction_minutes = sample_mean(row.paired_diffs);
    row.pct_reduction = 100.0 * row.reduction_minutes / baseline.overall.mean;
    row.p_value = paired_t(row.paired_diffs).p_value;
    rows.push_back(std::move(row));
  }
  return rows;
}

const std::map<std::string, std::array<OrderPmf, 5>>& bundling_library() {
  // Each entry rewrites the ESI 1-3 rows; ESI 4-5 keep the baseline pmf.
  static const std::map<std::string, std::array<OrderPmf, 5>> lib = [] {
    const ModelParams base = default_params();
    auto make = [&](OrderPmf esi1, OrderPmf esi2, OrderPmf esi3) {
      std::array<OrderPmf, 5> rows = base.order_profiles;
      rows[0] = esi1;
      rows[1] = esi2;
      rows[2] = esi3;
      return rows;
    };
    const OrderPmf b1 = base.order_profiles[0];
    const OrderPmf b2 = base.order_profiles[1];
    const OrderPmf b3 = base.order_profiles[2];
    const OrderPmf s1_esi1{0.093, 0.733, 0.122, 0.052};
    const OrderPmf s2_esi2{0.318, 0.620, 0.033, 0.029};
    const OrderPmf s3_esi3{0.360, 0.620, 0.000, 0.021};
    const OrderPmf s7_esi1{0.093, 0.633, 0.274, 0.0};
    const OrderPmf s7_esi2{0.318, 0.520, 0.162, 0.0};
    const OrderPmf s7_esi3{0.360, 0.520, 0.121, 0.0};
    const OrderPmf s8_esi1{0.10, 0.90, 0.0, 0.0};
    const OrderPmf s8_esi2{0.32, 0.68, 0.0, 0.0};
    const OrderPmf s8_esi3{0.36, 0.64, 0.0, 0.0};
    std::map<std::string, std::array<OrderPmf, 5>> m;
    m["baseline"] = make(b1, b2, b3);
    m["S1"] = make(s1_esi1, b2, b3);
    m["S2"] = make(b1, s2_esi2, b3);
    m["S3"] = make(b1, b2, s3_esi3);
    m["S4"] = make(s1_esi1, s2_esi2, b3);
    m["S5"] = make(b1, s2_esi2, s3_esi3);
    m["S6"] = make(s1_esi1, b2, s3_esi3);
    m["S7"] = make(s7_esi1, s7_esi2, s7_esi3);
    m["S8"] = make(s8_esi1, s8_esi2, s8_esi3);
    return m;
  }();
  return lib;
}

std::vector<BundlingRow> sweep_bundling(const std::vector<std::string>& names,
                                        const ScenarioConfig& config, int jobs) {
  ScenarioConfig base = config;
  base.order_profile_override.reset();
  ScenarioResult baseline = run_scenario(base, jobs);

  std::vector<BundlingRow> rows;
  for (const std::string& name : names) {
    auto it = bundling_library().find(name);
    if (it == bundling_library().end()) {
      throw UnknownScenarioError("unknown bundling scenario: " + name);
    }
    ScenarioConfig variant = base;
    variant.order_profile_override = it->second;
    ScenarioResult res = run_scenario(variant, jobs);

    std::vector<double> diffs;
    for (int i = 0; i < config.replications; ++i) {
      diffs.push_back(res.replications[i].overall_mean -
                      baseline.replications[i].overall_mean);
    }
    BundlingRow row;
    row.scenario = name;
    row.pct_change = 100.0 * sample_mean(diffs) / baseline.overall.mean;
    TTestResult t = paired_t(diffs);
    row.p_value = t.p_value;
    row.significant = t.significant;
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

double objective(const std::array<double, 5>& targets,
                 const ScenarioConfig& config, int jobs,
                 std::array<double, 5>* means_out) {
  ScenarioResult res = run_scenario(config, jobs);
  double worst = 0.0;
  for (int i = 0; i < 5; ++i) {
    double mean = res.by_esi[i].mean;
    if (means_out) (*means_out)[i] = mean;
    worst = std::max(worst, std::fabs(mean - targets[i]) / targets[i]);
  }
  return worst;
}

}  // namespace

CalibrationResult calibrate(const std::array<double, 5>& targets,
                            ScenarioConfig config, int max_rounds, int jobs) {
  for (double t : targets) {
    if (t <= 0.0) throw std::invalid_argument("calibration targets must be positive");
  }
  std::array<double, 3> knobs = {config.model.imaging_scale,
                                 config.model.departure_delay_scale,
                                 config.model.charting_scale};
  auto apply = [&](const std::array<double, 3>& k, ScenarioConfig c) {
    c.model.imaging_scale = k[0];
    c.model.departure_delay_scale = k[1];
    c.model.charting_scale = k[2];
    return c;
  };
  const std::array<std::pair<double, double>, 3> bounds = {{{0.25, 4.0}, {0.25, 4.0}, {0.25, 4.0}}};

  CalibrationResult best;
  std::array<double, 3> current = knobs;
  std::array<double, 5> means{};
  double best_err = objective(targets, apply(current, config), jobs, &means);
  best.achieved_means = means;

  for (int round = 0; round < max_rounds && best_err > 0.005; ++round) {
    bool improved = false;
    for (int k = 0; k < 3; ++k) {
      // bisection on the knob: shrink a bracket around the current value
      double lo = bounds[k].first, hi = bounds[k].second;
      for (int step = 0; step < 6; ++step) {
        double a = current[k] - (current[k] - lo) / 2.0;
        double b = current[k] + (hi - current[k]) / 2.0;
        double ea = best_err + 1, eb = best_err + 1;
        std::array<double, 5> ma{}, mb{};
        if (a < current[k]) {
          auto ka = current;
          ka[k] = a;
          ea = objective(targets, apply(ka, config), jobs, &ma);
        }
        if (b > current[k]) {
          auto kb = current;
          kb[k] = b;
          eb = objective(targets, apply(kb, config), jobs, &mb);
        }
        if (ea < best_err && ea <= eb) {
          hi = current[k];
          current[k] = a;
          best_err = ea;
          means = ma;
          improved = true;
        } else if (eb < best_err) {
          lo = current[k];
          current[k] = b;
          best_err = eb;
          means = mb;
          improved = true;
        } else {
          lo = (lo + current[k]) / 2.0;
          hi = (current[k] + hi) / 2.0;
        }
        if (hi - lo < 0.02) break;
      }
    }
    if (!improved) break;
  }

  best.imaging_scale = current[0];
  best.departure_scale = current[1];
  best.charting_scale = current[2];
  best.max_relative_error = best_err;
  best.achieved_means = means;
  if (best_err > 0.10) {
    throw CalibrationFailure("calibration stalled at max relative error " +
                             std::to_string(best_err));
  }
  return best;
}

}  // namespace edsim
