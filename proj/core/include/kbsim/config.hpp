#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kbsim/kernel.hpp"
#include "kbsim/point.hpp"
#include "kbsim/policies.hpp"
#include "kbsim/rkhs.hpp"

namespace kbsim {

enum class ExperimentKind { Regret, Coverage, InfoGain };

std::string_view to_string(ExperimentKind kind);

struct EnvironmentConfig {
  KernelSpec kernel;
  std::vector<Point> points;
  std::vector<Point> centers;
  std::vector<double> raw_weights;
  double norm_bound = 1.0;
};

enum class GammaVariant { Observed, Greedy };

// Parameters of the confidence machinery used by the coverage and
// information-gain experiments (the regret experiment reads them from each
// policy entry instead). B is taken from the environment's norm bound.
struct BoundsConfig {
  double lambda = 0.5;
  double noise_var = 0.25;
  double c1 = 1.0;
  double c2 = 3.0;
  double alpha0 = 1.0;
  double beta0 = 1.0;
  GammaVariant gamma_variant = GammaVariant::Observed;
};

struct PolicyConfig {
  std::string kind;      // igp_ucb | kl_ucb | kernel_beta_ucb | uniform_random | fixed | oracle
  std::string label;     // CSV identifier; defaults to kind, must be unique
  double B = 1.0;
  double lambda = 0.5;
  double noise_var = 0.25;
  std::optional<double> delta;  // falls back to the experiment delta
  double c1 = 1.0;
  double c2 = 3.0;
  double alpha0 = 1.0;
  double beta0 = 1.0;
  int arm = -1;          // fixed only
};

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::Regret;
  EnvironmentConfig environment;
  std::vector<PolicyConfig> policies;  // regret
  PolicyConfig collector;              // coverage; defaults to uniform_random
  BoundsConfig bounds;                 // coverage and infogain
  int horizon = 1;
  std::vector<std::uint64_t> seeds;
  double delta = 0.05;
  int thin = 1;
  std::string output;          // may be overridden/filled by --out
  std::string summary_output;  // coverage; defaults to <output>.summary.csv
  bool override_horizon_cap = false;
};

// Strict parse: the top-level key "version" must equal 1 and unknown keys are
// rejected at every level. Throws ConfigError with a JSON-path diagnostic.
ExperimentConfig parse_experiment_config(const std::string& json_text);
ExperimentConfig load_experiment_config(const std::string& path);

void apply_seed_offset(ExperimentConfig& config, std::uint64_t offset);

BanditEnvironment make_environment(const EnvironmentConfig& config, std::uint64_t seed);

// `oracle_arm` backs the "oracle" debug policy; pass the environment's
// optimum. The per-run delta is supplied later through Policy::reset.
std::unique_ptr<Policy> make_policy(const PolicyConfig& config,
                                    const KernelSpec& model_kernel, int oracle_arm);

}  // namespace kbsim
