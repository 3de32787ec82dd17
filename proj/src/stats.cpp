#include "edsim/stats.hpp"

#include <cmath>

namespace edsim {

namespace {

// Regularized incomplete beta I_x(a, b) via the Lentz continued fraction.
double betacf(double a, double b, double x) {
  const double tiny = 1e-300;
  const double eps = 1e-15;
  double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 300; ++m) {
    int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < eps) break;
  }
  return h;
}

double inc_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                    a * std::log(x) + b * std::log1p(-x);
  double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * betacf(a, b, x) / a;
  }
  return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

double two_sided_p(double t, double df) {
  double x = df / (df + t * t);
  return inc_beta(df / 2.0, 0.5, x);
}

}  // namespace

double sample_mean(std::span<const double> xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

double sample_sd(std::span<const double> xs) {
  double m = sample_mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

double t_cdf(double t, double df) {
  if (df <= 0.0) throw DomainError("t_cdf: df must be positive");
  double p = 0.5 * two_sided_p(t, df);
  return t > 0.0 ? 1.0 - p : p;
}

double t_quantile(double p, double df) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("t_quantile: p must be in (0,1)");
  if (df <= 0.0) throw DomainError("t_quantile: df must be positive");
  if (p == 0.5) return 0.0;
  // bisection on the CDF; bracket grows until it straddles p
  double lo = -1.0, hi = 1.0;
  while (t_cdf(lo, df) > p) lo *= 2.0;
  while (t_cdf(hi, df) < p) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    if (t_cdf(mid, df) < p) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo < 1e-12 * std::max(1.0, std::fabs(hi))) break;
  }
  return 0.5 * (lo + hi);
}

ConfidenceInterval mean_ci(std::span<const double> samples, double alpha) {
  if (samples.size() < 2) throw InsufficientDataError("mean_ci needs at least 2 samples");
  size_t n = samples.size();
  double m = sample_mean(samples);
  double sd = sample_sd(samples);
  double t = t_quantile(1.0 - alpha / 2.0, static_cast<double>(n - 1));
  return {m, t * sd / std::sqrt(static_cast<double>(n)), alpha, n};
}

TTestResult welch_t(std::span<const double> a, std::span<const double> b, double alpha) {
  if (a.size() < 2 || b.size() < 2) throw InsufficientDataError("welch_t needs n >= 2 per sample");
  double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  double va = sample_sd(a), vb = sample_sd(b);
  va *= va;
  vb *= vb;
  double se2 = va / na + vb / nb;
  TTestResult r;
  if (se2 == 0.0) {
    r.statistic = 0.0;
    r.degrees_of_freedom = na + nb - 2.0;
    r.p_value = sample_mean(a) == sample_mean(b) ? 1.0 : 0.0;
  } else {
    r.statistic = (sample_mean(a) - sample_mean(b)) / std::sqrt(se2);
    r.degrees_of_freedom = se2 * se2 /
        (va * va / (na * na * (na - 1.0)) + vb * vb / (nb * nb * (nb - 1.0)));
    r.p_value = two_sided_p(r.statistic, r.degrees_of_freedom);
  }
  r.significant = r.p_value < alpha;
  return r;
}

TTestResult paired_t(std::span<const double> diffs, double alpha) {
  if (diffs.size() < 2) throw InsufficientDataError("paired_t needs n >= 2");
  double n = static_cast<double>(diffs.size());
  double m = sample_mean(diffs);
  double sd = sample_sd(diffs);
  TTestResult r;
  r.degrees_of_freedom = n - 1.0;
  if (sd == 0.0) {
    // degenerate contract: all diffs equal
    r.statistic = m == 0.0 ? 0.0 : (m > 0 ? INFINITY : -INFINITY);
    r.p_value = m == 0.0 ? 1.0 : 0.0;
  } else {
    r.statistic = m / (sd / std::sqrt(n));
    r.p_value = two_sided_p(r.statistic, r.degrees_of_freedom);
  }
  r.significant = r.p_value < alpha;
  return r;
}

}  // namespace edsim
