#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>

#include "kbsim/bernoulli.hpp"
#include "kbsim/bounds.hpp"
#include "kbsim/gp_posterior.hpp"
#include "kbsim/point.hpp"
#include "kbsim/rng.hpp"

namespace kbsim {

// Index of the largest value; ties go to the lowest index. Selection is
// invariant under multiplying all values by a positive constant.
int argmax_lowest(std::span<const double> values);

// Sequential arm-selection strategy. Usage per run:
//   reset(domain, horizon, delta); then for t = 1..T: select(t), observe().
// select/observe must strictly alternate (std::logic_error otherwise), and
// observe must echo the selected arm. Policies see only the decision set and
// their own reward feedback, never the mean function or the environment
// seed. Deterministic policies are pure functions of their history;
// randomized ones draw solely from their own reseed()-able stream.
class Policy {
public:
  virtual ~Policy() = default;

  const std::string& name() const { return name_; }

  void reset(const DecisionSet& domain, int horizon, double delta);
  int select(int t);
  void observe(int arm, double y);

  // No-op for deterministic policies.
  virtual void reseed(std::uint64_t /*seed*/) {}

protected:
  explicit Policy(std::string name) : name_(std::move(name)) {}

  virtual void do_reset(const DecisionSet& domain, int horizon, double delta) = 0;
  virtual int do_select(int t) = 0;
  virtual void do_observe(int arm, double y) = 0;

  const DecisionSet& domain() const;
  int num_arms() const { return domain().size(); }
  double delta() const { return delta_; }
  int horizon() const { return horizon_; }

private:
  std::string name_;
  const DecisionSet* domain_ = nullptr;  // non-owning; valid for the run
  int horizon_ = 0;
  double delta_ = 0.0;
  bool awaiting_observe_ = false;
  int pending_arm_ = -1;
};

// Optimism against the regression posterior: plays the arm maximizing
//   mean(x) + subgaussian_width(B, lambda, gain_so_far, delta) * sd(x).
struct IgpUcbConfig {
  double B = 1.0;
  double lambda = 0.5;
  double noise_var = 0.25;
};

class IgpUcbPolicy final : public Policy {
public:
  IgpUcbPolicy(IgpUcbConfig config, KernelSpec kernel);

private:
  void do_reset(const DecisionSet& domain, int horizon, double delta) override;
  int do_select(int t) override;
  void do_observe(int arm, double y) override;

  IgpUcbConfig config_;
  KernelSpec kernel_;
  std::unique_ptr<ArmGpPosterior> gp_;
};

// Classic per-arm KL-UCB. Unexplored arms are initialized in index order
// before any index comparison happens.
class KlUcbPolicy final : public Policy {
public:
  explicit KlUcbPolicy(double c1 = 1.0, double c2 = 3.0);

private:
  void do_reset(const DecisionSet& domain, int horizon, double delta) override;
  int do_select(int t) override;
  void do_observe(int arm, double y) override;

  double c1_, c2_;
  std::unique_ptr<ArmStats> stats_;
};

// KL-UCB driven by the kernel-weighted Beta field: the index for arm x is
// kl_upper_index(beta mean, pseudocount, threshold(t)). No forced
// initialization; a zero pseudocount yields the vacuous index 1.
struct KernelBetaUcbConfig {
  double alpha0 = 1.0;
  double beta0 = 1.0;
  double c1 = 1.0;
  double c2 = 3.0;
};

class KernelBetaUcbPolicy final : public Policy {
public:
  KernelBetaUcbPolicy(KernelBetaUcbConfig config, KernelSpec kernel);

private:
  void do_reset(const DecisionSet& domain, int horizon, double delta) override;
  int do_select(int t) override;
  void do_observe(int arm, double y) override;

  KernelBetaUcbConfig config_;
  KernelSpec kernel_;
  std::unique_ptr<BetaField> field_;
};

// Uniform baseline; ignores all feedback.
class UniformRandomPolicy final : public Policy {
public:
  explicit UniformRandomPolicy(std::uint64_t seed = 0);

  void reseed(std::uint64_t seed) override;

private:
  void do_reset(const DecisionSet& domain, int horizon, double delta) override;
  int do_select(int t) override;
  void do_observe(int arm, double y) override;

  Xoshiro256pp rng_;
};

// Debug policy pinned to one arm. Pinned to the optimum it must show zero
// cumulative regret.
class FixedArmPolicy final : public Policy {
public:
  explicit FixedArmPolicy(int arm, std::string name = "fixed");

private:
  void do_reset(const DecisionSet& domain, int horizon, double delta) override;
  int do_select(int t) override;
  void do_observe(int arm, double y) override;

  int arm_;
};

}  // namespace kbsim
