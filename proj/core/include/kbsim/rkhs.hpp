#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <vector>

#include "kbsim/kernel.hpp"
#include "kbsim/point.hpp"
#include "kbsim/rng.hpp"

namespace kbsim {

// Finite kernel expansion f(x) = sum_i w_i k(c_i, x). Instances built through
// make_bounded_function additionally satisfy the mean-payoff constraints:
// RKHS norm at most the certified bound and 0 <= f(x) <= 1 on the decision
// set.
class RkhsFunction {
public:
  RkhsFunction(KernelSpec kernel, std::vector<Point> centers,
               Eigen::VectorXd weights, double norm_bound);

  double value(const Point& x) const;

  // sqrt(w' K w) over the centers. Tiny negative quadratic forms (down to
  // -1e-10) are clamped to zero; anything lower is a numeric failure.
  double rkhs_norm() const;

  const KernelSpec& kernel() const { return kernel_; }
  const std::vector<Point>& centers() const { return centers_; }
  const Eigen::VectorXd& weights() const { return weights_; }
  double norm_bound() const { return norm_bound_; }

private:
  KernelSpec kernel_;
  std::vector<Point> centers_;
  Eigen::VectorXd weights_;
  double norm_bound_;
};

// Scales raw_weights by the largest s in (0, 1] that brings the RKHS norm
// within B, then verifies 0 <= f(x) <= 1 at every decision point. Throws
// std::invalid_argument naming the offending point when the range check
// fails; such a function cannot serve as a Bernoulli mean payoff.
RkhsFunction make_bounded_function(const KernelSpec& kernel,
                                   std::vector<Point> centers,
                                   const std::vector<double>& raw_weights,
                                   double B, const DecisionSet& domain);

// Bernoulli bandit over a finite decision set: pulling x returns
// y ~ Ber(f(x)). Arm values and the optimum are cached at construction; the
// reward stream is fully determined by rng_seed.
class BanditEnvironment {
public:
  BanditEnvironment(RkhsFunction f, DecisionSet domain, std::uint64_t rng_seed);

  // One draw from the internal stream; consumes exactly one uniform.
  int sample_reward(int arm);

  // Same draw protocol against a caller-supplied stream. The point must be a
  // member of the decision set.
  int sample_reward(const Point& x, Xoshiro256pp& rng) const;

  const DecisionSet& decision_set() const { return domain_; }
  const RkhsFunction& mean_function() const { return f_; }
  std::uint64_t rng_seed() const { return seed_; }

  double arm_value(int arm) const { return values_[static_cast<std::size_t>(arm)]; }
  int optimum_arm() const { return optimum_arm_; }
  double optimum_value() const { return values_[static_cast<std::size_t>(optimum_arm_)]; }

  // T * f(x*) - sum_t f(x_t) for a played arm-index sequence.
  double cumulative_regret(std::span<const int> arms) const;

private:
  RkhsFunction f_;
  DecisionSet domain_;
  std::uint64_t seed_;
  Xoshiro256pp rng_;
  std::vector<double> values_;
  int optimum_arm_;
};

}  // namespace kbsim
