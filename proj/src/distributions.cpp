#include "edsim/distributions.hpp"

#include <cmath>
#include <numeric>

namespace edsim {

TriangularDist::TriangularDist(double lo, double md, double hi)
    : min(lo), mode(md), max(hi) {
  if (!(min <= mode && mode <= max) || !(min < max)) {
    throw DistributionError("triangular parameters must satisfy min <= mode <= max, min < max");
  }
}

double TriangularDist::quantile(double u) const {
  double span = max - min;
  double split = (mode - min) / span;
  if (u < split) {
    return min + std::sqrt(u * span * (mode - min));
  }
  return max - std::sqrt((1.0 - u) * span * (max - mode));
}

CategoricalDist::CategoricalDist(std::vector<int> labels, std::vector<double> probs)
    : labels_(std::move(labels)), probs_(std::move(probs)) {
  if (labels_.empty() || labels_.size() != probs_.size()) {
    throw DistributionError("categorical labels and probabilities must match and be nonempty");
  }
  double total = 0.0;
  for (double p : probs_) {
    if (p < 0.0) throw DistributionError("categorical probability < 0");
    total += p;
  }
  if (total <= 0.0) throw DistributionError("categorical probabilities sum to 0");
  cumulative_.resize(probs_.size());
  double acc = 0.0;
  for (size_t i = 0; i < probs_.size(); ++i) {
    probs_[i] /= total;
    acc += probs_[i];
    cumulative_[i] = acc;
  }
  cumulative_.back() = 1.0;
}

int CategoricalDist::sample_u(double u) const {
  for (size_t i = 0; i < cumulative_.size(); ++i) {
    if (u < cumulative_[i]) return labels_[i];
  }
  return labels_.back();
}

double CategoricalDist::probability_of(int label) const {
  for (size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return probs_[i];
  }
  return 0.0;
}

ArrivalProfile::ArrivalProfile(std::vector<std::vector<double>> rates)
    : rates_(std::move(rates)) {
  if (rates_.size() != 7) throw DistributionError("arrival profile needs 7 days");
  for (const auto& day : rates_) {
    if (day.size() != 24) throw DistributionError("arrival profile needs 24 hourly rates per day");
    for (double r : day) {
      if (r < 0.0) throw DistributionError("arrival rate < 0");
      peak_ = std::max(peak_, r);
    }
  }
}

double ArrivalProfile::rate_at(SimTime t) const {
  double week = 7.0 * 24.0 * 60.0;
  double w = std::fmod(t, week);
  if (w < 0) w += week;
  int day = static_cast<int>(w / (24.0 * 60.0));
  int hour = static_cast<int>(std::fmod(w, 24.0 * 60.0) / 60.0);
  return rates_[day][std::min(hour, 23)];
}

double ArrivalProfile::daily_total(int day) const {
  return std::accumulate(rates_[day].begin(), rates_[day].end(), 0.0);
}

SimTime ArrivalProfile::next_arrival(SimTime now, RngStream& stream) const {
  if (peak_ <= 0.0) throw NoArrivalError("arrival profile has all-zero rates");
  double t = now;
  while (true) {
    double u = stream.next_double();
    // exponential gap at the bounding peak rate, in minutes
    t += -std::log(1.0 - u) / (peak_ / 60.0);
    if (stream.next_double() * peak_ < rate_at(t)) return t;
  }
}

}  // namespace edsim
