#include "kbsim/bernoulli.hpp"

#include <stdexcept>

namespace kbsim {

ArmStats::ArmStats(int num_arms) {
  if (num_arms < 1)
    throw std::invalid_argument("arm stats: need at least one arm");
  pulls_.assign(static_cast<std::size_t>(num_arms), 0);
  successes_.assign(static_cast<std::size_t>(num_arms), 0);
}

void ArmStats::update(int arm, int y) {
  if (arm < 0 || arm >= num_arms())
    throw std::invalid_argument("arm stats: arm index out of range");
  if (y != 0 && y != 1)
    throw std::invalid_argument("arm stats: reward must be 0 or 1");
  pulls_[static_cast<std::size_t>(arm)] += 1;
  successes_[static_cast<std::size_t>(arm)] += y;
  total_ += 1;
}

std::optional<double> ArmStats::empirical_mean(int arm) const {
  const long long n = pulls(arm);
  if (n == 0) return std::nullopt;
  return static_cast<double>(successes(arm)) / static_cast<double>(n);
}

BetaField::BetaField(double alpha0, double beta0, KernelSpec kernel,
                     const DecisionSet& domain)
    : alpha0_(alpha0), beta0_(beta0), kernel_(kernel), domain_(&domain) {
  if (!(alpha0 > 0.0) || !(beta0 > 0.0))
    throw std::invalid_argument("beta field: prior parameters must be positive");
  alpha_ = Eigen::VectorXd::Constant(domain.size(), alpha0);
  beta_ = Eigen::VectorXd::Constant(domain.size(), beta0);
}

void BetaField::observe(int arm, int y) {
  if (arm < 0 || arm >= domain_->size())
    throw std::invalid_argument("beta field: arm index out of range");
  if (y != 0 && y != 1)
    throw std::invalid_argument("beta field: reward must be 0 or 1");
  const Point& xs = (*domain_)[arm];
  for (int j = 0; j < domain_->size(); ++j) {
    const double w = kernel_eval(kernel_, (*domain_)[j], xs);
    if (y == 1)
      alpha_[j] += w;
    else
      beta_[j] += w;
  }
  history_.emplace_back(arm, y);
}

std::pair<double, double> BetaField::params(const Point& x) const {
  double a = alpha0_;
  double b = beta0_;
  for (const auto& [arm, y] : history_) {
    const double w = kernel_eval(kernel_, x, (*domain_)[arm]);
    if (y == 1)
      a += w;
    else
      b += w;
  }
  return {a, b};
}

std::pair<double, double> BetaField::params(int arm) const {
  if (arm < 0 || arm >= domain_->size())
    throw std::invalid_argument("beta field: arm index out of range");
  return {alpha_[arm], beta_[arm]};
}

double BetaField::mean(int arm) const { return mean_of(params(arm)); }

double BetaField::pseudocount(int arm) const {
  const auto [a, b] = params(arm);
  return a + b - alpha0_ - beta0_;
}

double BetaField::mean(const Point& x) const { return mean_of(params(x)); }

double BetaField::pseudocount(const Point& x) const {
  const auto [a, b] = params(x);
  return a + b - alpha0_ - beta0_;
}

}  // namespace kbsim
