#include "kbsim/gp_posterior.hpp"

#include <cmath>
#include <stdexcept>

#include "kbsim/errors.hpp"

namespace kbsim {

namespace {
constexpr double kVarClamp = 1e-10;

double checked_var(double v, const char* where) {
  if (v < -kVarClamp) throw NumericError(std::string(where) + ": negative variance");
  return v < 0.0 ? 0.0 : v;
}
}  // namespace

GpPosterior::GpPosterior(KernelSpec kernel, double noise_var)
    : kernel_(kernel), noise_var_(noise_var) {
  if (!(noise_var > 0.0))
    throw std::invalid_argument("gp posterior: noise variance must be positive");
}

Eigen::VectorXd GpPosterior::kvec(const Point& x) const {
  Eigen::VectorXd k(t_);
  for (int i = 0; i < t_; ++i)
    k[i] = kernel_eval(kernel_, points_[static_cast<std::size_t>(i)], x);
  return k;
}

void GpPosterior::update(const Point& x, double y) {
  const int t = t_;
  const Eigen::VectorXd k = kvec(x);
  const double kxx = kernel_eval(kernel_, x, x);

  if (chol_.rows() <= t) {
    const int cap = std::max(16, 2 * static_cast<int>(chol_.rows()));
    chol_.conservativeResize(cap, cap);
  }

  double pivot2 = kxx + noise_var_;
  if (t > 0) {
    Eigen::VectorXd r = k;
    chol_.topLeftCorner(t, t).triangularView<Eigen::Lower>().solveInPlace(r);
    pivot2 -= r.squaredNorm();
    if (pivot2 <= 0.0)
      throw NumericError("gp update: Cholesky pivot is not positive");
    const double pivot = std::sqrt(pivot2);
    chol_.block(t, 0, 1, t) = r.transpose();
    chol_(t, t) = pivot;
    whitened_.conservativeResize(t + 1);
    whitened_[t] = (y - r.dot(whitened_.head(t))) / pivot;
    log_diag_sum_ += std::log(pivot);
  } else {
    const double pivot = std::sqrt(pivot2);
    chol_(0, 0) = pivot;
    whitened_.resize(1);
    whitened_[0] = y / pivot;
    log_diag_sum_ = std::log(pivot);
  }
  points_.push_back(x);
  ++t_;
}

double GpPosterior::mean(const Point& x) const {
  if (t_ == 0) return 0.0;
  Eigen::VectorXd u = kvec(x);
  chol_.topLeftCorner(t_, t_).triangularView<Eigen::Lower>().solveInPlace(u);
  return u.dot(whitened_);
}

double GpPosterior::var(const Point& x) const {
  const double kxx = kernel_eval(kernel_, x, x);
  if (t_ == 0) return kxx;
  Eigen::VectorXd u = kvec(x);
  chol_.topLeftCorner(t_, t_).triangularView<Eigen::Lower>().solveInPlace(u);
  return checked_var(kxx - u.squaredNorm(), "gp var");
}

double GpPosterior::info_gain() const {
  return log_diag_sum_ - 0.5 * t_ * std::log(noise_var_);
}

Eigen::MatrixXd GpPosterior::chol() const {
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(t_, t_);
  if (t_ > 0)
    L = chol_.topLeftCorner(t_, t_).triangularView<Eigen::Lower>();
  return L;
}

ArmGpPosterior::ArmGpPosterior(KernelSpec kernel, double noise_var,
                               const DecisionSet& domain)
    : kernel_(kernel),
      noise_var_(noise_var),
      m_(domain.size()),
      gram_(gram_matrix(kernel, domain.points())),
      counts_(Eigen::VectorXd::Zero(domain.size())),
      reward_sums_(Eigen::VectorXd::Zero(domain.size())) {
  if (!(noise_var > 0.0))
    throw std::invalid_argument("gp posterior: noise variance must be positive");
}

void ArmGpPosterior::observe(int arm, double y) {
  if (arm < 0 || arm >= m_)
    throw std::invalid_argument("gp observe: arm index out of range");
  counts_[arm] += 1.0;
  reward_sums_[arm] += y;
  ++t_;
  stale_ = true;
}

void ArmGpPosterior::refresh() const {
  if (!stale_) return;
  const Eigen::VectorXd w = counts_.cwiseSqrt();
  Eigen::MatrixXd M = gram_.cwiseProduct(w * w.transpose());
  M.diagonal().array() += noise_var_;
  Eigen::LLT<Eigen::MatrixXd> llt(M);
  if (llt.info() != Eigen::Success)
    throw NumericError("gp refresh: Cholesky factorization failed");

  // P = L^-1 W K, one column per arm.
  Eigen::MatrixXd P = w.asDiagonal() * gram_;
  llt.matrixL().solveInPlace(P);

  Eigen::VectorXd b(m_);
  for (int j = 0; j < m_; ++j)
    b[j] = counts_[j] > 0.0 ? reward_sums_[j] / w[j] : 0.0;
  llt.matrixL().solveInPlace(b);

  mean_ = P.transpose() * b;
  var_.resize(m_);
  for (int j = 0; j < m_; ++j)
    var_[j] = checked_var(gram_(j, j) - P.col(j).squaredNorm(), "gp var");

  info_gain_ = Eigen::MatrixXd(llt.matrixL()).diagonal().array().log().sum() -
               0.5 * m_ * std::log(noise_var_);
  stale_ = false;
}

double ArmGpPosterior::mean(int arm) const {
  refresh();
  return mean_[arm];
}

double ArmGpPosterior::var(int arm) const {
  refresh();
  return var_[arm];
}

double ArmGpPosterior::info_gain() const {
  refresh();
  return info_gain_;
}

std::vector<double> greedy_info_gain_sequence(const KernelSpec& kernel,
                                              const DecisionSet& domain,
                                              int t_max, double noise_var) {
  if (t_max < 0) throw std::invalid_argument("greedy info gain: negative budget");
  ArmGpPosterior state(kernel, noise_var, domain);
  std::vector<double> gamma;
  gamma.reserve(static_cast<std::size_t>(t_max) + 1);
  gamma.push_back(0.0);
  double total = 0.0;
  for (int step = 0; step < t_max; ++step) {
    int best = 0;
    double best_var = state.var(0);
    for (int j = 1; j < domain.size(); ++j) {
      const double v = state.var(j);
      if (v > best_var) {
        best = j;
        best_var = v;
      }
    }
    total += 0.5 * std::log1p(best_var / noise_var);
    state.observe(best, 0.0);  // reward value is irrelevant to variances
    gamma.push_back(total);
  }
  return gamma;
}

double max_info_gain_greedy(const KernelSpec& kernel, const DecisionSet& domain,
                            int t, double noise_var) {
  if (t < 1) throw std::invalid_argument("greedy info gain: budget must be >= 1");
  return greedy_info_gain_sequence(kernel, domain, t, noise_var).back();
}

}  // namespace kbsim
