#include "kbsim/bounds.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace kbsim {

namespace {

constexpr double kBisectionTol = 1e-9;
constexpr int kBisectionMaxIter = 128;

// p log(p/q) with 0 log 0 = 0 and p log(p/0) = +inf for p > 0.
double xlog_ratio(double p, double q) {
  if (p == 0.0) return 0.0;
  if (q == 0.0) return std::numeric_limits<double>::infinity();
  return p * std::log(p / q);
}

}  // namespace

double bernoulli_kl(double a, double b) {
  if (!(a >= 0.0 && a <= 1.0) || !(b >= 0.0 && b <= 1.0))
    throw std::domain_error("bernoulli_kl: arguments must lie in [0,1]");
  return xlog_ratio(a, b) + xlog_ratio(1.0 - a, 1.0 - b);
}

double kl_threshold(int t, const KlThresholdParams& params) {
  if (t < 1) throw std::invalid_argument("kl_threshold: t must be >= 1");
  if (!(params.delta > 0.0 && params.delta < 1.0))
    throw std::invalid_argument("kl_threshold: delta must lie in (0,1)");
  const double lt = std::log(static_cast<double>(t) / params.delta);
  const double loglog = lt > 1.0 ? std::log(lt) : 0.0;
  return params.c1 * lt + params.c2 * std::max(0.0, loglog);
}

double kl_upper_index(double mean, double count, double threshold) {
  if (!(mean >= 0.0 && mean <= 1.0))
    throw std::domain_error("kl_upper_index: mean must lie in [0,1]");
  if (!(count >= 0.0))
    throw std::invalid_argument("kl_upper_index: count must be nonnegative");
  if (!(threshold >= 0.0))
    throw std::invalid_argument("kl_upper_index: threshold must be nonnegative");
  if (count == 0.0 || mean == 1.0) return 1.0;
  // d(mean, q) <= 0 only at q = mean; answered directly because the float
  // evaluation of d is sign-noise that close to the mean.
  if (threshold == 0.0) return mean;

  double lo = mean;  // always feasible: d(mean, mean) = 0
  double hi = 1.0;
  for (int i = 0; i < kBisectionMaxIter && hi - lo > kBisectionTol; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (count * bernoulli_kl(mean, mid) <= threshold)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

double kl_lower_index(double mean, double count, double threshold) {
  if (!(mean >= 0.0 && mean <= 1.0))
    throw std::domain_error("kl_lower_index: mean must lie in [0,1]");
  if (!(count >= 0.0))
    throw std::invalid_argument("kl_lower_index: count must be nonnegative");
  if (!(threshold >= 0.0))
    throw std::invalid_argument("kl_lower_index: threshold must be nonnegative");
  if (count == 0.0 || mean == 0.0) return 0.0;
  if (threshold == 0.0) return mean;  // same exact case as the upper index
  if (count * bernoulli_kl(mean, 0.0) <= threshold) return 0.0;

  double lo = 0.0;
  double hi = mean;  // always feasible
  for (int i = 0; i < kBisectionMaxIter && hi - lo > kBisectionTol; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (count * bernoulli_kl(mean, mid) <= threshold)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

double subgaussian_width(double B, double lambda, double gamma, double delta) {
  if (!(B > 0.0)) throw std::invalid_argument("subgaussian_width: B must be positive");
  if (!(lambda > 0.0))
    throw std::invalid_argument("subgaussian_width: lambda must be positive");
  if (!(gamma >= 0.0))
    throw std::invalid_argument("subgaussian_width: gamma must be nonnegative");
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("subgaussian_width: delta must lie in (0,1)");
  return B + lambda * std::sqrt(2.0 * (gamma + 1.0 + std::log(1.0 / delta)));
}

ConfidenceInterval subgaussian_interval(double mean, double variance, double gamma,
                                        double B, double lambda, double delta,
                                        bool clipped) {
  const double half = subgaussian_width(B, lambda, gamma, delta) * std::sqrt(variance);
  ConfidenceInterval ci{mean - half, mean + half};
  if (clipped) {
    ci.lower = std::min(std::max(ci.lower, 0.0), 1.0);
    ci.upper = std::min(std::max(ci.upper, 0.0), 1.0);
  }
  return ci;
}

ConfidenceInterval subgaussian_interval(const GpPosterior& gp, const Point& x,
                                        double B, double lambda, double delta,
                                        bool clipped) {
  return subgaussian_interval(gp.mean(x), gp.var(x), gp.info_gain(), B, lambda,
                              delta, clipped);
}

ConfidenceInterval kl_interval(const ArmStats& stats, int arm, int t,
                               const KlThresholdParams& params) {
  const auto mean = stats.empirical_mean(arm);
  if (!mean) return {0.0, 1.0};
  const double n = static_cast<double>(stats.pulls(arm));
  const double threshold = kl_threshold(t, params);
  return {kl_lower_index(*mean, n, threshold),
          kl_upper_index(*mean, n, threshold)};
}

}  // namespace kbsim
