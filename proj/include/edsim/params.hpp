#ifndef EDSIM_PARAMS_HPP
#define EDSIM_PARAMS_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "edsim/distributions.hpp"

namespace edsim {

// One staffed shift slot, repeated daily. Hours are clock hours; a shift
// with end_hour <= start_hour wraps past midnight.
struct ShiftSpec {
  double start_hour = 7.0;
  double end_hour = 16.0;
  int physicians = 1;
};

struct PodSpec {
  int beds = 12;
  bool trauma_capable = false;
  int trauma_bays = 0;
  std::array<bool, 5> accepts{};  // indexed by ESI level - 1
  std::vector<ShiftSpec> shifts;
};

// Per-ESI probability mass over imaging-order counts {0,1,2,3}.
using OrderPmf = std::array<double, 4>;

// Complete parameter set for one replication of the ED model. Defaults
// reproduce the published inputs where they exist; layout, staffing and
// the service-time knobs marked by *_scale are calibrated values.
struct ModelParams {
  // arrivals: hourly base rates (patients/hour) and day-of-week multipliers,
  // day 0 = Monday
  std::array<double, 24> hourly_rates{};
  std::array<double, 7> day_multipliers{};

  // per-ESI arrival shares, levels 1..5
  std::array<double, 5> esi_mix{};
  std::array<OrderPmf, 5> order_profiles{};
  std::array<int, 5> interactions_per_esi{};
  // service triangle per (ESI, interaction); unused slots hold min=max=0
  std::array<std::array<TriangularDist, 4>, 5> interaction_times{};

  TriangularDist order_to_begin{10, 25, 55};
  TriangularDist begin_to_end{5, 10, 21};
  TriangularDist end_to_read{5, 15, 34};
  double imaging_scale = 1.0;
  // calibrated per-interval multipliers (order-to-begin, begin-to-end,
  // end-to-read) applied on top of imaging_scale
  std::array<double, 3> interval_scales{1.0, 1.0, 1.0};
  double reduction_otb = 0.0;  // fraction of order-to-begin removed
  double reduction_etr = 0.0;  // fraction of end-to-read removed

  // images bundled into one order; metadata only, never affects timing
  std::vector<double> image_count_probs{0.70, 0.20, 0.09, 0.01};

  TriangularDist triage_time{3, 5, 8};
  TriangularDist charting_time{4, 6, 9};
  double charting_scale = 1.0;

  std::array<double, 5> admit_probability{};
  TriangularDist discharge_delay{10, 20, 40};
  TriangularDist admit_delay{30, 60, 120};
  double departure_delay_scale = 1.0;
  // extra per-ESI multiplier on the departure delay (boarding priority)
  std::array<double, 5> departure_scale_by_esi{1, 1, 1, 1, 1};

  double trauma_bypass_probability = 0.5;
  double chain_probability = 0.4;  // visit another patient before charting
  double handoff_minutes_per_patient = 1.0;

  std::vector<PodSpec> pods;

  ArrivalProfile arrival_profile() const;
  double expected_interaction_minutes(int esi) const;
};

ModelParams default_params();

}  // namespace edsim

#endif
