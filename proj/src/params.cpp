#include "edsim/params.hpp"

namespace edsim {

ArrivalProfile ModelParams::arrival_profile() const {
  std::vector<std::vector<double>> rates(7, std::vector<double>(24));
  for (int d = 0; d < 7; ++d) {
    for (int h = 0; h < 24; ++h) {
      rates[d][h] = hourly_rates[h] * day_multipliers[d];
    }
  }
  return ArrivalProfile(std::move(rates));
}

double ModelParams::expected_interaction_minutes(int esi) const {
  double total = 0.0;
  for (int k = 0; k < interactions_per_esi[esi - 1]; ++k) {
    total += interaction_times[esi - 1][k].mean();
  }
  return total;
}

ModelParams default_params() {
  ModelParams p;

  p.hourly_rates = {7, 7, 7, 7, 7, 7, 7, 10, 13, 15, 17, 18,
                    18, 18, 18, 18, 18, 18, 18, 16, 14, 12, 10, 8};
  p.day_multipliers = {1.08, 1.04, 1.02, 1.00, 1.00, 0.94, 0.92};

  p.esi_mix = {0.031, 0.235, 0.472, 0.228, 0.034};

  p.order_profiles = {{
      {0.093, 0.633, 0.222, 0.052},
      {0.318, 0.520, 0.133, 0.029},
      {0.360, 0.520, 0.100, 0.021},
      {0.628, 0.340, 0.028, 0.000},
      {0.943, 0.057, 0.000, 0.000},
  }};

  p.interactions_per_esi = {4, 3, 3, 2, 2};
  auto T = [](double a, double b, double c) { return TriangularDist(a, b, c); };
  p.interaction_times[0] = {T(13, 14, 15), T(8, 9, 10), T(8, 9, 10), T(2, 3, 4)};
  p.interaction_times[1] = {T(9, 10, 11), T(15, 16, 17), T(7, 8, 9), TriangularDist{}};
  p.interaction_times[2] = {T(8, 9, 10), T(14, 15, 16), T(7, 8, 9), TriangularDist{}};
  p.interaction_times[3] = {T(10, 11, 12), T(5, 6, 7), TriangularDist{}, TriangularDist{}};
  p.interaction_times[4] = {T(10, 11, 12), T(6, 7, 8), TriangularDist{}, TriangularDist{}};

  p.admit_probability = {0.85, 0.45, 0.30, 0.05, 0.02};

  // calibrated layout: two trauma pods take the acute side (ESI 1-3 only,
  // so low-acuity patients never queue behind trauma cases), two larger
  // general pods take everything ambulatory
  PodSpec trauma_pod;
  trauma_pod.beds = 10;
  trauma_pod.trauma_capable = true;
  trauma_pod.accepts = {true, true, true, false, false};
  trauma_pod.shifts = {{7, 16, 2}, {15, 24, 2}, {23, 8, 1}};

  PodSpec general_pod;
  general_pod.beds = 13;
  general_pod.trauma_capable = false;
  general_pod.accepts = {false, false, true, true, true};
  general_pod.shifts = {{7, 16, 4}, {15, 24, 4}, {23, 8, 2}};

  trauma_pod.trauma_bays = 2;
  p.pods.push_back(trauma_pod);
  trauma_pod.trauma_bays = 0;
  p.pods.push_back(trauma_pod);
  p.pods.push_back(general_pod);
  p.pods.push_back(general_pod);

  // calibrated service knobs; the imaging cycle is weighted toward the
  // order-to-begin interval, which observed response decompositions show
  // carries most of the removable delay
  p.interval_scales = {1.40, 0.72, 0.97};
  p.departure_scale_by_esi = {0.05, 1.76, 2.13, 0.08, 0.10};

  return p;
}

}  // namespace edsim
