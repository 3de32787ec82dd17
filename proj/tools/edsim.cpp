#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "edsim/config.hpp"

namespace {

using namespace edsim;

constexpr int kExitParse = 2;
constexpr int kExitValidation = 3;
constexpr int kExitRuntime = 4;

struct CommonOpts {
  std::string config_path;
  std::string out_dir = ".";
  int jobs = 1;
  int64_t seed_override = -1;
  int reps_override = -1;
};

RunConfig load(const CommonOpts& opts) {
  RunConfig cfg = opts.config_path.empty() ? RunConfig{}
                                           : parse_config_file(opts.config_path);
  if (opts.seed_override >= 0) cfg.scenario.base_seed = static_cast<uint64_t>(opts.seed_override);
  if (opts.reps_override >= 0) {
    if (opts.reps_override < 2) throw ValidationError("--reps: needs at least 2");
    cfg.scenario.replications = opts.reps_override;
  }
  return cfg;
}

std::ofstream open_out(const CommonOpts& opts, const std::string& name) {
  std::filesystem::create_directories(opts.out_dir);
  auto path = std::filesystem::path(opts.out_dir) / name;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  std::cerr << "writing " << path.string() << "\n";
  return out;
}

void cmd_validate(const CommonOpts& opts) {
  RunConfig cfg = load(opts);
  ScenarioResult res = run_scenario(cfg.scenario, opts.jobs);
  auto out = open_out(opts, "table4.csv");
  out << "esi,actual_min,simulated_min,ci_half_width,percent_diff\n";
  for (int e = 0; e < 5; ++e) {
    double actual = cfg.validation_targets[e];
    double sim = res.by_esi[e].mean;
    int pct = static_cast<int>(std::lround(100.0 * std::fabs(sim - actual) / actual));
    out << (e + 1) << ',' << csv_number(actual, 1) << ',' << csv_number(sim, 1) << ','
        << csv_number(res.by_esi[e].half_width, 1) << ',' << pct << "\n";
  }
  std::cerr << "overall mean " << csv_number(res.overall.mean, 1) << " +/- "
            << csv_number(res.overall.half_width, 1) << " min\n";
}

void cmd_sweep_delays(const CommonOpts& opts, std::vector<double> levels,
                      const std::string& dimension) {
  RunConfig cfg = load(opts);
  for (double level : levels) {
    if (level < 0.0 || level > 1.0) throw ValidationError("sweep levels must lie in [0, 1]");
  }
  auto rows = sweep_delays(levels, dimension, cfg.scenario, opts.jobs);
  auto out = open_out(opts, dimension == "both" ? "table6.csv" : "table5.csv");
  out << "level,dimension,pct_reduction,reduction_min,p_value\n";
  for (const auto& row : rows) {
    out << csv_number(row.level, 2) << ',' << row.dimension << ','
        << csv_number(row.pct_reduction, 1) << ',' << csv_number(row.reduction_minutes, 1)
        << ',' << csv_number(row.p_value, 4) << "\n";
  }
}

void cmd_sweep_bundling(const CommonOpts& opts, std::vector<std::string> names) {
  RunConfig cfg = load(opts);
  if (names.empty()) names = {"S1", "S2", "S3", "S4", "S5", "S6", "S7", "S8"};
  auto rows = sweep_bundling(names, cfg.scenario, opts.jobs);
  auto out = open_out(opts, "table7.csv");
  out << "scenario,pct_change,p_value,significant\n";
  for (const auto& row : rows) {
    out << row.scenario << ',' << csv_number(row.pct_change, 1) << ','
        << csv_number(row.p_value, 4) << ',' << (row.significant ? "true" : "false") << "\n";
  }
}

void cmd_run(const CommonOpts& opts, const std::string& event_log_path) {
  RunConfig cfg = load(opts);
  if (!event_log_path.empty()) {
    // single instrumented replication with the event log attached
    std::ofstream log(event_log_path);
    if (!log) throw std::runtime_error("cannot write " + event_log_path);
    EdModel model(cfg.scenario.effective_params(), cfg.scenario.base_seed, 0);
    model.set_event_log(&log);
    model.run(cfg.scenario.warmup_minutes + cfg.scenario.horizon_minutes);
  }
  ScenarioResult res = run_scenario(cfg.scenario, opts.jobs);
  auto out = open_out(opts, "scenario.csv");
  out << "esi,mean_min,ci_half_width,patients_per_rep\n";
  for (int e = 0; e < 5; ++e) {
    double count = 0;
    for (const auto& rep : res.replications) count += rep.count_by_esi[e];
    out << (e + 1) << ',' << csv_number(res.by_esi[e].mean, 1) << ','
        << csv_number(res.by_esi[e].half_width, 1) << ','
        << csv_number(count / res.replications.size(), 1) << "\n";
  }
  out << "overall," << csv_number(res.overall.mean, 1) << ','
      << csv_number(res.overall.half_width, 1) << ',';
  double total = 0;
  for (const auto& rep : res.replications) total += rep.total_patients;
  out << csv_number(total / res.replications.size(), 1) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Emergency-department patient-flow simulator"};
  app.require_subcommand(1);
  app.fallthrough();  // accept the common flags after the subcommand too

  CommonOpts opts;
  app.add_option("--config", opts.config_path, "JSON config file");
  app.add_option("--seed", opts.seed_override, "override the config seed");
  app.add_option("--reps", opts.reps_override, "override the replication count");
  app.add_option("--jobs", opts.jobs, "parallel replication workers")->default_val(1);
  app.add_option("--out", opts.out_dir, "output directory")->default_val(".");

  auto* validate = app.add_subcommand("validate", "baseline run vs observed means (table4.csv)");

  std::vector<double> levels{0.1, 0.2, 0.3, 0.5, 1.0};
  std::string dimension = "otb";
  auto* sweep = app.add_subcommand("sweep-delays", "delay-reduction sweep (table5/6.csv)");
  sweep->add_option("--levels", levels, "reduction levels in [0,1]");
  sweep->add_option("--dimension", dimension, "otb | etr | both")
      ->check(CLI::IsMember({"otb", "etr", "both"}));

  std::vector<std::string> scenario_names;
  auto* bundling = app.add_subcommand("sweep-bundling", "order-bundling scenarios (table7.csv)");
  bundling->add_option("--scenarios", scenario_names, "scenario names (default S1..S8)");

  std::string event_log_path;
  auto* run = app.add_subcommand("run", "single scenario (scenario.csv)");
  run->add_option("--event-log", event_log_path, "line-delimited event log for replication 0");

  auto* defaults = app.add_subcommand("print-defaults", "emit the built-in config");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }

  try {
    if (*validate) cmd_validate(opts);
    if (*sweep) cmd_sweep_delays(opts, levels, dimension);
    if (*bundling) cmd_sweep_bundling(opts, scenario_names);
    if (*run) cmd_run(opts, event_log_path);
    if (*defaults) std::cout << edsim::emit_defaults();
  } catch (const edsim::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const edsim::ValidationError& e) {
    std::cerr << "invalid config: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return 0;
}
