#include "kbsim/policies.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace kbsim {

int argmax_lowest(std::span<const double> values) {
  if (values.empty())
    throw std::invalid_argument("argmax_lowest: empty value list");
  int best = 0;
  for (int i = 1; i < static_cast<int>(values.size()); ++i)
    if (values[static_cast<std::size_t>(i)] > values[static_cast<std::size_t>(best)])
      best = i;
  return best;
}

const DecisionSet& Policy::domain() const {
  if (domain_ == nullptr)
    throw std::logic_error("policy: reset() has not been called");
  return *domain_;
}

void Policy::reset(const DecisionSet& domain, int horizon, double delta) {
  if (horizon < 1)
    throw std::invalid_argument("policy reset: horizon must be >= 1");
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("policy reset: delta must lie in (0,1)");
  domain_ = &domain;
  horizon_ = horizon;
  delta_ = delta;
  awaiting_observe_ = false;
  pending_arm_ = -1;
  do_reset(domain, horizon, delta);
}

int Policy::select(int t) {
  if (domain_ == nullptr)
    throw std::logic_error("policy: select() before reset()");
  if (awaiting_observe_)
    throw std::logic_error("policy: select() called twice without observe()");
  if (t < 1 || t > horizon_)
    throw std::invalid_argument("policy select: round out of range");
  const int arm = do_select(t);
  awaiting_observe_ = true;
  pending_arm_ = arm;
  return arm;
}

void Policy::observe(int arm, double y) {
  if (!awaiting_observe_)
    throw std::logic_error("policy: observe() without a pending select()");
  if (arm != pending_arm_)
    throw std::logic_error("policy: observe() for an arm that was not selected");
  awaiting_observe_ = false;
  pending_arm_ = -1;
  do_observe(arm, y);
}

IgpUcbPolicy::IgpUcbPolicy(IgpUcbConfig config, KernelSpec kernel)
    : Policy("igp_ucb"), config_(config), kernel_(kernel) {
  if (!(config.B > 0.0) || !(config.lambda > 0.0) || !(config.noise_var > 0.0))
    throw std::invalid_argument("igp_ucb: B, lambda, nu2 must be positive");
}

void IgpUcbPolicy::do_reset(const DecisionSet& domain, int /*horizon*/, double /*delta*/) {
  gp_ = std::make_unique<ArmGpPosterior>(kernel_, config_.noise_var, domain);
}

int IgpUcbPolicy::do_select(int /*t*/) {
  const double width =
      subgaussian_width(config_.B, config_.lambda, gp_->info_gain(), delta());
  std::vector<double> index(static_cast<std::size_t>(num_arms()));
  for (int j = 0; j < num_arms(); ++j)
    index[static_cast<std::size_t>(j)] = gp_->mean(j) + width * std::sqrt(gp_->var(j));
  return argmax_lowest(index);
}

void IgpUcbPolicy::do_observe(int arm, double y) { gp_->observe(arm, y); }

KlUcbPolicy::KlUcbPolicy(double c1, double c2) : Policy("kl_ucb"), c1_(c1), c2_(c2) {
  if (!(c1 >= 0.0) || !(c2 >= 0.0))
    throw std::invalid_argument("kl_ucb: c1, c2 must be nonnegative");
}

void KlUcbPolicy::do_reset(const DecisionSet& domain, int /*horizon*/, double /*delta*/) {
  stats_ = std::make_unique<ArmStats>(domain.size());
}

int KlUcbPolicy::do_select(int t) {
  for (int j = 0; j < num_arms(); ++j)
    if (stats_->pulls(j) == 0) return j;
  const double threshold = kl_threshold(t, {c1_, c2_, delta()});
  std::vector<double> index(static_cast<std::size_t>(num_arms()));
  for (int j = 0; j < num_arms(); ++j)
    index[static_cast<std::size_t>(j)] =
        kl_upper_index(*stats_->empirical_mean(j),
                       static_cast<double>(stats_->pulls(j)), threshold);
  return argmax_lowest(index);
}

void KlUcbPolicy::do_observe(int arm, double y) {
  stats_->update(arm, static_cast<int>(y));
}

KernelBetaUcbPolicy::KernelBetaUcbPolicy(KernelBetaUcbConfig config, KernelSpec kernel)
    : Policy("kernel_beta_ucb"), config_(config), kernel_(kernel) {
  if (!(config.alpha0 > 0.0) || !(config.beta0 > 0.0))
    throw std::invalid_argument("kernel_beta_ucb: prior must be positive");
  if (!(config.c1 >= 0.0) || !(config.c2 >= 0.0))
    throw std::invalid_argument("kernel_beta_ucb: c1, c2 must be nonnegative");
}

void KernelBetaUcbPolicy::do_reset(const DecisionSet& domain, int /*horizon*/,
                                   double /*delta*/) {
  field_ = std::make_unique<BetaField>(config_.alpha0, config_.beta0, kernel_, domain);
}

int KernelBetaUcbPolicy::do_select(int t) {
  const double threshold = kl_threshold(t, {config_.c1, config_.c2, delta()});
  std::vector<double> index(static_cast<std::size_t>(num_arms()));
  for (int j = 0; j < num_arms(); ++j)
    index[static_cast<std::size_t>(j)] =
        kl_upper_index(field_->mean(j), field_->pseudocount(j), threshold);
  return argmax_lowest(index);
}

void KernelBetaUcbPolicy::do_observe(int arm, double y) {
  field_->observe(arm, static_cast<int>(y));
}

UniformRandomPolicy::UniformRandomPolicy(std::uint64_t seed)
    : Policy("uniform_random"), rng_(seed) {}

void UniformRandomPolicy::reseed(std::uint64_t seed) { rng_ = Xoshiro256pp(seed); }

void UniformRandomPolicy::do_reset(const DecisionSet& /*domain*/, int /*horizon*/,
                                   double /*delta*/) {}

int UniformRandomPolicy::do_select(int /*t*/) {
  return static_cast<int>(rng_.next_below(static_cast<std::uint64_t>(num_arms())));
}

void UniformRandomPolicy::do_observe(int /*arm*/, double /*y*/) {}

FixedArmPolicy::FixedArmPolicy(int arm, std::string name)
    : Policy(std::move(name)), arm_(arm) {
  if (arm < 0) throw std::invalid_argument("fixed policy: negative arm index");
}

void FixedArmPolicy::do_reset(const DecisionSet& domain, int /*horizon*/,
                              double /*delta*/) {
  if (arm_ >= domain.size())
    throw std::invalid_argument("fixed policy: arm index out of range");
}

int FixedArmPolicy::do_select(int /*t*/) { return arm_; }

void FixedArmPolicy::do_observe(int /*arm*/, double /*y*/) {}

}  // namespace kbsim
