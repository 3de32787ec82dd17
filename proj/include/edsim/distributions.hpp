#ifndef EDSIM_DISTRIBUTIONS_HPP
#define EDSIM_DISTRIBUTIONS_HPP

#include <stdexcept>
#include <vector>

#include "edsim/calendar.hpp"
#include "edsim/rng.hpp"

namespace edsim {

struct DistributionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NoArrivalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Triangular distribution over minutes, parameters (min, mode, max).
struct TriangularDist {
  double min = 0.0;
  double mode = 0.0;
  double max = 0.0;

  TriangularDist() = default;
  TriangularDist(double lo, double md, double hi);

  double mean() const { return (min + mode + max) / 3.0; }
  // Inverse CDF.
  double quantile(double u) const;
  double sample(RngStream& stream) const { return quantile(stream.next_double()); }
  TriangularDist scaled(double s) const { return {min * s, mode * s, max * s}; }
};

// Discrete distribution over small integer labels (ESI levels, order
// counts). Sampling is by inverse CDF in label order, so a small shift in
// the pmf changes the outcome for only a matching share of the uniforms.
class CategoricalDist {
 public:
  CategoricalDist() = default;
  // Probabilities are normalized; they must sum to 1 within 1e-9 of their
  // own total being positive, each >= 0.
  CategoricalDist(std::vector<int> labels, std::vector<double> probs);

  int sample(RngStream& stream) const { return sample_u(stream.next_double()); }
  int sample_u(double u) const;
  double probability_of(int label) const;
  const std::vector<int>& labels() const { return labels_; }
  const std::vector<double>& probabilities() const { return probs_; }

 private:
  std::vector<int> labels_;
  std::vector<double> probs_;  // normalized
  std::vector<double> cumulative_;
};

// Weekly arrival-rate table (patients/hour) for a non-stationary Poisson
// process, day 0 = Monday. Wraps cyclically past the first week.
class ArrivalProfile {
 public:
  ArrivalProfile() = default;
  // rates[day][hour], 7 x 24, already including any day-of-week multiplier.
  explicit ArrivalProfile(std::vector<std::vector<double>> rates);

  double rate_at(SimTime t) const;
  double peak_rate() const { return peak_; }
  double daily_total(int day) const;

  // Next arrival strictly after `now`, via thinning at the peak rate.
  SimTime next_arrival(SimTime now, RngStream& stream) const;

 private:
  std::vector<std::vector<double>> rates_;
  double peak_ = 0.0;
};

}  // namespace edsim

#endif
