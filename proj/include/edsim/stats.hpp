#ifndef EDSIM_STATS_HPP
#define EDSIM_STATS_HPP

#include <span>
#include <stdexcept>

namespace edsim {

struct InsufficientDataError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ConfidenceInterval {
  double mean = 0.0;
  double half_width = 0.0;
  double alpha = 0.05;
  size_t n = 0;
};

struct TTestResult {
  double statistic = 0.0;
  double degrees_of_freedom = 0.0;
  double p_value = 1.0;
  bool significant = false;
};

double sample_mean(std::span<const double> xs);
double sample_sd(std::span<const double> xs);

// Inverse Student-t CDF, accurate to ~1e-8 over the usual range.
double t_quantile(double p, double df);
// Student-t CDF.
double t_cdf(double t, double df);

// Student-t confidence interval for the mean; requires n >= 2.
ConfidenceInterval mean_ci(std::span<const double> samples, double alpha = 0.05);

// Welch's unequal-variance two-sample t-test, two-sided.
TTestResult welch_t(std::span<const double> a, std::span<const double> b,
                    double alpha = 0.05);

// One-sample t-test on paired differences, two-sided. All-equal diffs are
// reported exactly: p = 1 if all zero, p = 0 otherwise.
TTestResult paired_t(std::span<const double> diffs, double alpha = 0.05);

}  // namespace edsim

#endif
