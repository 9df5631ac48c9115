#pragma once

#include <Eigen/Dense>
#include <vector>

#include "kbsim/kernel.hpp"
#include "kbsim/point.hpp"

namespace kbsim {

// Gaussian-process regression posterior over the observation history,
// treating the 0/1 rewards as noisy function values:
//
//   mean(x) = k_t(x)' (K_t + nv I)^-1 y_t
//   var(x)  = k(x,x) - k_t(x)' (K_t + nv I)^-1 k_t(x)
//
// with nv the modelling noise variance. The lower Cholesky factor of
// K_t + nv I is maintained by bordering: one O(t^2) triangular solve per
// update instead of an O(t^3) refactorization, which is what makes long
// horizons affordable. Queries cost one O(t^2) triangular solve.
//
// The mean is a plain least-squares smoother, not a probability: it can
// leave [0,1] even though every observation is 0 or 1.
class GpPosterior {
public:
  GpPosterior(KernelSpec kernel, double noise_var);

  void update(const Point& x, double y);

  double mean(const Point& x) const;

  // Clamps round-off negatives in (-1e-10, 0) to zero; a variance below
  // -1e-10 throws NumericError.
  double var(const Point& x) const;

  // 1/2 log det(I + K_t / nv), read off the Cholesky diagonal. Nondecreasing
  // along any update sequence.
  double info_gain() const;

  int size() const { return t_; }
  double noise_var() const { return noise_var_; }
  const KernelSpec& kernel() const { return kernel_; }
  const std::vector<Point>& observed_points() const { return points_; }

  // L (t x t, lower triangular). Test hook: L L' must reconstruct
  // K_t + nv I entrywise.
  Eigen::MatrixXd chol() const;

private:
  Eigen::VectorXd kvec(const Point& x) const;

  KernelSpec kernel_;
  double noise_var_;
  int t_ = 0;
  std::vector<Point> points_;
  Eigen::MatrixXd chol_;    // capacity-doubling storage, top-left t x t live
  Eigen::VectorXd whitened_;  // L^-1 y, grown one entry per update
  double log_diag_sum_ = 0.0;
};

// The same posterior specialized to a fixed finite decision set, maintained
// through per-arm sufficient statistics (pull counts and reward sums). With
// n_j pulls of arm j, W = diag(sqrt(n_j)) and K the m x m arm Gram matrix,
//
//   M = W K W + nv I,    b_j = sum of rewards at j / sqrt(n_j)
//   mean(j) = (W K e_j)' M^-1 b,   var(j) = K_jj - ||L^-1 W K e_j||^2
//
// which agrees with GpPosterior on the full history exactly (push-through
// identity) but costs O(m^3) per round instead of O(t^2), independent of t.
class ArmGpPosterior {
public:
  ArmGpPosterior(KernelSpec kernel, double noise_var, const DecisionSet& domain);

  void observe(int arm, double y);

  double mean(int arm) const;
  double var(int arm) const;
  double info_gain() const;

  int rounds() const { return t_; }
  int num_arms() const { return m_; }
  double count(int arm) const { return counts_[arm]; }

private:
  void refresh() const;

  KernelSpec kernel_;
  double noise_var_;
  int m_;
  Eigen::MatrixXd gram_;
  Eigen::VectorXd counts_;
  Eigen::VectorXd reward_sums_;
  int t_ = 0;

  mutable bool stale_ = true;
  mutable Eigen::VectorXd mean_;
  mutable Eigen::VectorXd var_;
  mutable double info_gain_ = 0.0;
};

// Greedy maximal information gain: gamma_hat(t) for every budget 0..t_max,
// built by repeatedly adding the arm with the largest current posterior
// variance (ties to the lowest index). Arms may repeat. Entry [0] is 0.
std::vector<double> greedy_info_gain_sequence(const KernelSpec& kernel,
                                              const DecisionSet& domain,
                                              int t_max, double noise_var);

// gamma_hat(t) alone; t >= 1.
double max_info_gain_greedy(const KernelSpec& kernel, const DecisionSet& domain,
                            int t, double noise_var);

}  // namespace kbsim
