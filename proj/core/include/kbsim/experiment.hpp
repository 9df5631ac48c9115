#pragma once

#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "kbsim/config.hpp"

namespace kbsim {

// Bound families evaluated by the coverage experiment.
enum class BoundFamily { Subgaussian, SubgaussianClipped, Kl, KernelBetaKl };

std::string_view to_string(BoundFamily family);

// ---- regret ----------------------------------------------------------

struct RegretRow {
  int t;
  int arm;
  double reward;
  double inst_regret;
  double cum_regret;
};

struct RegretRun {
  std::string policy;
  std::uint64_t seed;
  std::vector<RegretRow> rows;  // rounds with t % thin == 0, plus t == T
};

struct RegretResult {
  std::vector<RegretRun> runs;  // policy-major, then seed, as configured
};

// ---- coverage --------------------------------------------------------

struct CoverageRow {
  BoundFamily family;
  int t;
  int arm;
  double lower;
  double upper;
  bool contains_f;
  double width;
};

struct CoverageRun {
  std::uint64_t seed;
  std::vector<CoverageRow> rows;  // thinned detail
  // Run-level violation indicators, each matching its bound's quantifier:
  // the whole-domain band is judged over every (t, arm) jointly, the
  // per-arm bands any-t at each fixed arm.
  bool subgaussian_violated = false;
  bool subgaussian_clipped_violated = false;
  std::vector<bool> kl_violated;         // per arm
  std::vector<bool> kernel_beta_violated;  // per arm
};

struct CoverageResult {
  int num_arms = 0;
  std::vector<CoverageRun> runs;
};

// ---- information gain -------------------------------------------------

struct InfoGainRow {
  std::uint64_t seed;
  int t;
  double greedy_gamma;
  double observed_gain;
  bool inversion;  // observed exceeded greedy; reported, never hidden
};

struct InfoGainResult {
  std::vector<InfoGainRow> rows;
};

// Runners. `jobs` bounds the number of concurrently processed runs;
// output is bytewise independent of it (each run is a sealed task and
// results are assembled in configuration order).
RegretResult run_regret_experiment(const ExperimentConfig& config, int jobs = 1);
CoverageResult run_coverage_experiment(const ExperimentConfig& config, int jobs = 1);
InfoGainResult run_info_gain_sweep(const ExperimentConfig& config);

// CSV emission, fixed column order, header always present.
void write_regret_csv(const RegretResult& result, std::ostream& os);
void write_coverage_csv(const CoverageResult& result, std::ostream& os);
void write_coverage_summary_csv(const CoverageResult& result, std::ostream& os);
void write_info_gain_csv(const InfoGainResult& result, std::ostream& os);

}  // namespace kbsim
