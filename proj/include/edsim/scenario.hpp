#ifndef EDSIM_SCENARIO_HPP
#define EDSIM_SCENARIO_HPP

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "edsim/model.hpp"
#include "edsim/params.hpp"
#include "edsim/stats.hpp"

namespace edsim {

struct UnknownScenarioError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct CalibrationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Declarative description of one experiment: imaging-delay reductions, an
// optional order-count override, and the replication protocol.
struct ScenarioConfig {
  ModelParams model = default_params();
  double r_otb = 0.0;
  double r_etr = 0.0;
  // per-ESI override of the order-count pmf (bundling scenarios)
  std::optional<std::array<OrderPmf, 5>> order_profile_override;
  int replications = 60;
  double horizon_minutes = 21.0 * 24.0 * 60.0;
  double warmup_minutes = 2.0 * 24.0 * 60.0;
  uint64_t base_seed = 20220101;

  ModelParams effective_params() const;
};

// Post-warm-up statistics of one replication. Only patients whose bed was
// assigned after the warm-up end are counted.
struct ReplicationSummary {
  std::array<double, 5> mean_by_esi{};
  std::array<int, 5> count_by_esi{};
  double overall_mean = 0.0;
  int total_patients = 0;
  double mean_bed_to_dispo = 0.0;
  double mean_dispo_to_departure = 0.0;
  double mean_direct_care_share = 0.0;  // mean of per-patient face/LOS
  // mean LOS among ESI-3 patients stratified by order count 0..3
  std::array<double, 4> esi3_mean_by_orders{};
  std::array<int, 4> esi3_count_by_orders{};
};

struct ScenarioResult {
  std::vector<ReplicationSummary> replications;
  ConfidenceInterval overall;                    // across replication means
  std::array<ConfidenceInterval, 5> by_esi{};
};

ReplicationSummary summarize(const std::vector<PatientRecord>& records,
                             double warmup_end);

ReplicationSummary run_replication(const ScenarioConfig& config, int replication);
ScenarioResult run_scenario(const ScenarioConfig& config, int jobs = 1);

struct SweepRow {
  double level = 0.0;
  std::string dimension;  // otb | etr | both
  double pct_reduction = 0.0;
  double reduction_minutes = 0.0;
  double p_value = 1.0;
  // per-replication paired differences (baseline minus scenario), for
  // monotonicity/dominance checks
  std::vector<double> paired_diffs;
};

// CRN-paired delay-reduction sweep against the config's own baseline.
std::vector<SweepRow> sweep_delays(const std::vector<double>& levels,
                                   const std::string& dimension,
                                   const ScenarioConfig& config, int jobs = 1);

struct BundlingRow {
  std::string scenario;
  double pct_change = 0.0;  // negative = reduction
  double p_value = 1.0;
  bool significant = false;
};

// Named order-count overrides; S1-S8 are built in.
const std::map<std::string, std::array<OrderPmf, 5>>& bundling_library();

std::vector<BundlingRow> sweep_bundling(const std::vector<std::string>& names,
                                        const ScenarioConfig& config, int jobs = 1);

struct CalibrationResult {
  double imaging_scale = 1.0;
  double departure_scale = 1.0;
  double charting_scale = 1.0;
  double max_relative_error = 0.0;
  std::array<double, 5> achieved_means{};
};

// Cyclic coordinate search (bisection per knob) minimizing the max
// per-ESI relative error against the target means.
CalibrationResult calibrate(const std::array<double, 5>& targets,
                            ScenarioConfig config, int max_rounds = 20,
                            int jobs = 1);

}  // namespace edsim

#endif
