#include "kbsim/experiment.hpp"

#include <atomic>
#include <future>
#include <ostream>
#include <vector>

#include "kbsim/bounds.hpp"
#include "kbsim/csv.hpp"
#include "kbsim/errors.hpp"
#include "kbsim/rng.hpp"

namespace kbsim {

namespace {

// Runs fn(0..n-1), at most `jobs` concurrently. Every task owns slot i of
// the caller's result vector, so the assembled output does not depend on
// scheduling.
template <typename Fn>
void run_indexed(int n, int jobs, Fn&& fn) {
  if (jobs <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  const int workers = std::min(jobs, n);
  std::vector<std::future<void>> futures;
  futures.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w)
    futures.push_back(std::async(std::launch::async, [&] {
      for (int i; (i = next.fetch_add(1)) < n;) fn(i);
    }));
  for (auto& f : futures) f.get();
}

bool keep_round(int t, int thin, int horizon) {
  return t % thin == 0 || t == horizon;
}

}  // namespace

std::string_view to_string(BoundFamily family) {
  switch (family) {
    case BoundFamily::Subgaussian: return "subgaussian";
    case BoundFamily::SubgaussianClipped: return "subgaussian_clipped";
    case BoundFamily::Kl: return "kl";
    case BoundFamily::KernelBetaKl: return "kernel_beta_kl";
  }
  return "?";
}

RegretResult run_regret_experiment(const ExperimentConfig& config, int jobs) {
  if (config.kind != ExperimentKind::Regret)
    throw ConfigError("regret runner: config kind is not \"regret\"");

  const int num_seeds = static_cast<int>(config.seeds.size());
  const int num_runs = static_cast<int>(config.policies.size()) * num_seeds;
  RegretResult result;
  result.runs.resize(static_cast<std::size_t>(num_runs));

  run_indexed(num_runs, jobs, [&](int idx) {
    const auto& pconf = config.policies[static_cast<std::size_t>(idx / num_seeds)];
    const std::uint64_t seed = config.seeds[static_cast<std::size_t>(idx % num_seeds)];

    BanditEnvironment env =
        make_environment(config.environment, derive_seed(seed, 0));
    auto policy =
        make_policy(pconf, config.environment.kernel, env.optimum_arm());
    policy->reset(env.decision_set(), config.horizon,
                  pconf.delta.value_or(config.delta));
    policy->reseed(derive_seed(seed, 1));

    RegretRun run;
    run.policy = pconf.label;
    run.seed = seed;
    run.rows.reserve(static_cast<std::size_t>(config.horizon / config.thin) + 2);
    double cum = 0.0;
    for (int t = 1; t <= config.horizon; ++t) {
      const int arm = policy->select(t);
      const int y = env.sample_reward(arm);
      policy->observe(arm, y);
      const double inst = env.optimum_value() - env.arm_value(arm);
      cum += inst;
      if (keep_round(t, config.thin, config.horizon))
        run.rows.push_back({t, arm, static_cast<double>(y), inst, cum});
    }
    result.runs[static_cast<std::size_t>(idx)] = std::move(run);
  });
  return result;
}

CoverageResult run_coverage_experiment(const ExperimentConfig& config, int jobs) {
  if (config.kind != ExperimentKind::Coverage)
    throw ConfigError("coverage runner: config kind is not \"coverage\"");

  const BoundsConfig& bc = config.bounds;
  const double B = config.environment.norm_bound;

  // The greedy curve is seed-independent; compute it once if requested.
  std::vector<double> greedy_gamma;
  if (bc.gamma_variant == GammaVariant::Greedy) {
    DecisionSet domain(config.environment.points);
    greedy_gamma = greedy_info_gain_sequence(config.environment.kernel, domain,
                                             config.horizon, bc.noise_var);
  }

  const int num_seeds = static_cast<int>(config.seeds.size());
  CoverageResult result;
  result.num_arms = static_cast<int>(config.environment.points.size());
  result.runs.resize(static_cast<std::size_t>(num_seeds));

  run_indexed(num_seeds, jobs, [&](int idx) {
    const std::uint64_t seed = config.seeds[static_cast<std::size_t>(idx)];
    BanditEnvironment env =
        make_environment(config.environment, derive_seed(seed, 0));
    const DecisionSet& domain = env.decision_set();
    const int m = domain.size();

    auto collector =
        make_policy(config.collector, config.environment.kernel, env.optimum_arm());
    collector->reset(domain, config.horizon,
                     config.collector.delta.value_or(config.delta));
    collector->reseed(derive_seed(seed, 1));

    ArmGpPosterior gp(config.environment.kernel, bc.noise_var, domain);
    ArmStats stats(m);
    BetaField field(bc.alpha0, bc.beta0, config.environment.kernel, domain);
    const KlThresholdParams klp{bc.c1, bc.c2, config.delta};

    CoverageRun run;
    run.seed = seed;
    run.kl_violated.assign(static_cast<std::size_t>(m), false);
    run.kernel_beta_violated.assign(static_cast<std::size_t>(m), false);
    run.rows.reserve(
        (static_cast<std::size_t>(config.horizon / config.thin) + 2) * 4 *
        static_cast<std::size_t>(m));

    for (int t = 1; t <= config.horizon; ++t) {
      const int arm = collector->select(t);
      const int y = env.sample_reward(arm);
      collector->observe(arm, y);
      gp.observe(arm, y);
      stats.update(arm, y);
      field.observe(arm, y);

      const double gamma = bc.gamma_variant == GammaVariant::Observed
                               ? gp.info_gain()
                               : greedy_gamma[static_cast<std::size_t>(t)];
      const double threshold = kl_threshold(t, klp);
      const bool keep = keep_round(t, config.thin, config.horizon);

      for (int j = 0; j < m; ++j) {
        const double f = env.arm_value(j);

        const ConfidenceInterval subg = subgaussian_interval(
            gp.mean(j), gp.var(j), gamma, B, bc.lambda, config.delta, false);
        const ConfidenceInterval subg_clipped{
            std::min(std::max(subg.lower, 0.0), 1.0),
            std::min(std::max(subg.upper, 0.0), 1.0)};

        const auto mean = stats.empirical_mean(j);
        const ConfidenceInterval kl =
            mean ? ConfidenceInterval{
                       kl_lower_index(*mean, static_cast<double>(stats.pulls(j)),
                                      threshold),
                       kl_upper_index(*mean, static_cast<double>(stats.pulls(j)),
                                      threshold)}
                 : ConfidenceInterval{0.0, 1.0};

        const double kb_mean = field.mean(j);
        const double kb_count = field.pseudocount(j);
        const ConfidenceInterval kb{kl_lower_index(kb_mean, kb_count, threshold),
                                    kl_upper_index(kb_mean, kb_count, threshold)};

        run.subgaussian_violated |= !subg.contains(f);
        run.subgaussian_clipped_violated |= !subg_clipped.contains(f);
        if (!kl.contains(f)) run.kl_violated[static_cast<std::size_t>(j)] = true;
        if (!kb.contains(f))
          run.kernel_beta_violated[static_cast<std::size_t>(j)] = true;

        if (keep) {
          run.rows.push_back({BoundFamily::Subgaussian, t, j, subg.lower,
                              subg.upper, subg.contains(f), subg.width()});
          run.rows.push_back({BoundFamily::SubgaussianClipped, t, j,
                              subg_clipped.lower, subg_clipped.upper,
                              subg_clipped.contains(f), subg_clipped.width()});
          run.rows.push_back({BoundFamily::Kl, t, j, kl.lower, kl.upper,
                              kl.contains(f), kl.width()});
          run.rows.push_back({BoundFamily::KernelBetaKl, t, j, kb.lower, kb.upper,
                              kb.contains(f), kb.width()});
        }
      }
    }
    result.runs[static_cast<std::size_t>(idx)] = std::move(run);
  });
  return result;
}

InfoGainResult run_info_gain_sweep(const ExperimentConfig& config) {
  if (config.kind != ExperimentKind::InfoGain)
    throw ConfigError("infogain runner: config kind is not \"infogain\"");

  DecisionSet domain(config.environment.points);
  const std::vector<double> greedy = greedy_info_gain_sequence(
      config.environment.kernel, domain, config.horizon, config.bounds.noise_var);

  InfoGainResult result;
  for (const std::uint64_t seed : config.seeds) {
    BanditEnvironment env =
        make_environment(config.environment, derive_seed(seed, 0));
    Xoshiro256pp arm_rng(derive_seed(seed, 1));
    ArmGpPosterior gp(config.environment.kernel, config.bounds.noise_var,
                      env.decision_set());

    result.rows.push_back({seed, 0, 0.0, 0.0, false});
    for (int t = 1; t <= config.horizon; ++t) {
      const int arm = static_cast<int>(
          arm_rng.next_below(static_cast<std::uint64_t>(domain.size())));
      const int y = env.sample_reward(arm);
      gp.observe(arm, y);
      if (!keep_round(t, config.thin, config.horizon)) continue;
      const double observed = gp.info_gain();
      const double g = greedy[static_cast<std::size_t>(t)];
      result.rows.push_back({seed, t, g, observed, observed > g + 1e-12});
    }
  }
  return result;
}

void write_regret_csv(const RegretResult& result, std::ostream& os) {
  os << "policy,seed,t,arm,reward,instantaneous_regret,cumulative_regret\n";
  for (const auto& run : result.runs)
    for (const auto& row : run.rows)
      os << csv_field(run.policy) << ',' << run.seed << ',' << row.t << ','
         << row.arm << ',' << csv_double(row.reward) << ','
         << csv_double(row.inst_regret) << ',' << csv_double(row.cum_regret)
         << '\n';
}

void write_coverage_csv(const CoverageResult& result, std::ostream& os) {
  os << "bound,seed,t,arm,lower,upper,contains_f,width\n";
  for (const auto& run : result.runs)
    for (const auto& row : run.rows)
      os << to_string(row.family) << ',' << run.seed << ',' << row.t << ','
         << row.arm << ',' << csv_double(row.lower) << ','
         << csv_double(row.upper) << ',' << (row.contains_f ? 1 : 0) << ','
         << csv_double(row.width) << '\n';
}

void write_coverage_summary_csv(const CoverageResult& result, std::ostream& os) {
  // Whole-domain families quantify over every (t, arm) jointly: one row per
  // run, arm = -1. Per-arm families get one any-t row per arm.
  os << "bound,seed,arm,violated\n";
  for (const auto& run : result.runs) {
    os << to_string(BoundFamily::Subgaussian) << ',' << run.seed << ",-1,"
       << (run.subgaussian_violated ? 1 : 0) << '\n';
    os << to_string(BoundFamily::SubgaussianClipped) << ',' << run.seed << ",-1,"
       << (run.subgaussian_clipped_violated ? 1 : 0) << '\n';
    for (int j = 0; j < result.num_arms; ++j)
      os << to_string(BoundFamily::Kl) << ',' << run.seed << ',' << j << ','
         << (run.kl_violated[static_cast<std::size_t>(j)] ? 1 : 0) << '\n';
    for (int j = 0; j < result.num_arms; ++j)
      os << to_string(BoundFamily::KernelBetaKl) << ',' << run.seed << ',' << j
         << ',' << (run.kernel_beta_violated[static_cast<std::size_t>(j)] ? 1 : 0)
         << '\n';
  }
}

void write_info_gain_csv(const InfoGainResult& result, std::ostream& os) {
  os << "seed,t,greedy_gamma,observed_gain,inversion\n";
  for (const auto& row : result.rows)
    os << row.seed << ',' << row.t << ',' << csv_double(row.greedy_gamma) << ','
       << csv_double(row.observed_gain) << ',' << (row.inversion ? 1 : 0) << '\n';
}

}  // namespace kbsim
