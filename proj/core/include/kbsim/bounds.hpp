#pragma once

#include "kbsim/bernoulli.hpp"
#include "kbsim/gp_posterior.hpp"
#include "kbsim/point.hpp"

namespace kbsim {

struct ConfidenceInterval {
  double lower;
  double upper;

  double width() const { return upper - lower; }
  bool contains(double v) const { return lower <= v && v <= upper; }
};

// Threshold schedule for the KL indices:
//   threshold(t) = c1 log(t/delta) + c2 max(0, log log(t/delta))
// The log-log term is clamped to zero once log(t/delta) <= 1, so the
// schedule is finite and nonnegative for every t >= 1.
struct KlThresholdParams {
  double c1 = 1.0;
  double c2 = 3.0;
  double delta = 0.05;
};

double kl_threshold(int t, const KlThresholdParams& params);

// Bernoulli relative entropy d(a, b) = a log(a/b) + (1-a) log((1-a)/(1-b)),
// with the usual conventions: 0 log 0 = 0 and d = +inf when b is 0 or 1
// while a is not. Arguments outside [0,1] throw std::domain_error.
double bernoulli_kl(double a, double b);

// Largest q in [mean, 1] with count * d(mean, q) <= threshold, by bisection
// (absolute tolerance 1e-9, at most 128 iterations; tolerances are fixed so
// independent implementations produce comparable output). count = 0 or
// mean = 1 give the vacuous answer 1; threshold = 0 gives mean back.
double kl_upper_index(double mean, double count, double threshold);

// Mirror image: smallest q in [0, mean] with count * d(mean, q) <= threshold.
// count = 0 gives 0.
double kl_lower_index(double mean, double count, double threshold);

// Width multiplier B + lambda sqrt(2 (gamma + 1 + log(1/delta))) of the
// self-normalized confidence band for lambda-subgaussian noise. Bernoulli
// rewards are subgaussian with lambda = 1/2.
double subgaussian_width(double B, double lambda, double gamma, double delta);

// mean(x) +/- width * sd(x). Deliberately NOT intersected with [0,1]: the
// regression mean can sit outside the payoff range, and the raw interval is
// what exposes that. `clipped` additionally clamps both ends into [0,1] and
// is tracked as its own bound family.
ConfidenceInterval subgaussian_interval(double mean, double variance, double gamma,
                                        double B, double lambda, double delta,
                                        bool clipped = false);
ConfidenceInterval subgaussian_interval(const GpPosterior& gp, const Point& x,
                                        double B, double lambda, double delta,
                                        bool clipped = false);

// Two-sided KL interval from per-arm counts. An unexplored arm gets the
// vacuous (0, 1).
ConfidenceInterval kl_interval(const ArmStats& stats, int arm, int t,
                               const KlThresholdParams& params);

}  // namespace kbsim
