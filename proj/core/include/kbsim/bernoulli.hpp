#pragma once

#include <Eigen/Dense>
#include <optional>
#include <utility>
#include <vector>

#include "kbsim/kernel.hpp"
#include "kbsim/point.hpp"

namespace kbsim {

// Per-arm pull counts and success counts.
class ArmStats {
public:
  explicit ArmStats(int num_arms);

  void update(int arm, int y);  // y in {0,1}

  long long pulls(int arm) const { return pulls_[static_cast<std::size_t>(arm)]; }
  long long successes(int arm) const { return successes_[static_cast<std::size_t>(arm)]; }
  long long total_pulls() const { return total_; }
  int num_arms() const { return static_cast<int>(pulls_.size()); }

  // Empty until the arm has been pulled; there is no made-up default mean.
  std::optional<double> empirical_mean(int arm) const;

private:
  std::vector<long long> pulls_;
  std::vector<long long> successes_;
  long long total_ = 0;
};

// Kernel-weighted Beta posterior field: every observation (x_s, y_s) is
// shared across the domain with weight k(x, x_s), so
//
//   alpha(x) = alpha0 + sum_s y_s k(x, x_s)
//   beta(x)  = beta0  + sum_s (1 - y_s) k(x, x_s)
//
// The derived mean alpha/(alpha+beta) always stays inside (0,1), unlike the
// regression smoother. Under the point-mass kernel the pseudocount
// alpha + beta - alpha0 - beta0 collapses to the exact pull count.
//
// Per-arm parameters are cached and updated in O(m) per observation; the
// full history is retained so parameters at arbitrary points remain
// available.
class BetaField {
public:
  BetaField(double alpha0, double beta0, KernelSpec kernel, const DecisionSet& domain);

  void observe(int arm, int y);  // y in {0,1}

  // (alpha, beta) from the retained history; x need not be an arm.
  std::pair<double, double> params(const Point& x) const;

  // Cached per-arm access.
  std::pair<double, double> params(int arm) const;
  double mean(int arm) const;
  double pseudocount(int arm) const;

  double mean(const Point& x) const;
  double pseudocount(const Point& x) const;

  double alpha0() const { return alpha0_; }
  double beta0() const { return beta0_; }
  int num_arms() const { return domain_->size(); }
  int rounds() const { return static_cast<int>(history_.size()); }

private:
  static double mean_of(std::pair<double, double> ab) {
    return ab.first / (ab.first + ab.second);
  }

  double alpha0_;
  double beta0_;
  KernelSpec kernel_;
  const DecisionSet* domain_;  // non-owning; outlives the field
  std::vector<std::pair<int, int>> history_;  // (arm, y)
  Eigen::VectorXd alpha_;
  Eigen::VectorXd beta_;
};

}  // namespace kbsim
