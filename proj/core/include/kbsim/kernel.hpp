#pragma once

#include <Eigen/Dense>

#include "kbsim/point.hpp"

namespace kbsim {

// Positive semi-definite covariance on the decision domain with k(x,x) = 1.
// Three families:
//   SquaredExponential  k(x,x') = exp(-||x-x'||^2 / (2 l^2))
//   Matern              half-integer smoothness 0.5, 1.5 or 2.5
//   Delta               k(x,x') = 1{x = x'}  (bitwise), the point-mass kernel
//                       that collapses the machinery onto the classic
//                       finite-armed Bernoulli bandit
struct KernelSpec {
  enum class Family { SquaredExponential, Matern, Delta };

  Family family = Family::SquaredExponential;
  double lengthscale = 1.0;   // > 0; unused by Delta
  double smoothness = 1.5;    // Matern only; one of 0.5, 1.5, 2.5

  static KernelSpec squared_exponential(double lengthscale);
  static KernelSpec matern(double smoothness, double lengthscale);
  static KernelSpec delta();
};

// k(x, y). Throws std::invalid_argument on dimension mismatch.
double kernel_eval(const KernelSpec& k, const Point& x, const Point& y);

// Symmetric m x m matrix K with K(i,j) = k(x_i, x_j), unit diagonal.
Eigen::MatrixXd gram_matrix(const KernelSpec& k, const std::vector<Point>& points);

// True iff the smallest eigenvalue of the symmetric matrix is >= -tol.
bool psd_check(const Eigen::MatrixXd& m, double tol);

}  // namespace kbsim
