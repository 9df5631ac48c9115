// Command-line front end: runs one experiment described by a JSON config and
// writes CSV. Exit codes: 0 success, 1 configuration or usage error,
// 2 numeric failure.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include "kbsim/config.hpp"
#include "kbsim/errors.hpp"
#include "kbsim/experiment.hpp"

namespace {

struct CliOptions {
  std::string config_path;
  std::string out;
  std::int64_t seed_offset = 0;
  bool quiet = false;
  int jobs = 1;
};

void add_common(CLI::App* sub, CliOptions& opt) {
  sub->add_option("--config", opt.config_path, "Path to the JSON experiment config")
      ->required();
  sub->add_option("--out", opt.out, "Output CSV path (overrides the config)");
  sub->add_option("--seed-offset", opt.seed_offset,
                  "Added to every seed in the config");
  sub->add_flag("--quiet", opt.quiet, "Suppress the progress summary");
  sub->add_option("--jobs", opt.jobs, "Max concurrent runs (output is identical)")
      ->check(CLI::PositiveNumber);
}

std::ofstream open_output(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw kbsim::ConfigError("cannot open output file \"" + path + "\"");
  return os;
}

kbsim::ExperimentConfig prepare(const CliOptions& opt, kbsim::ExperimentKind kind) {
  kbsim::ExperimentConfig config = kbsim::load_experiment_config(opt.config_path);
  if (config.kind != kind)
    throw kbsim::ConfigError("config kind \"" + std::string(to_string(config.kind)) +
                             "\" does not match the \"" +
                             std::string(to_string(kind)) + "\" subcommand");
  kbsim::apply_seed_offset(config, static_cast<std::uint64_t>(opt.seed_offset));
  if (!opt.out.empty()) config.output = opt.out;
  if (config.output.empty())
    throw kbsim::ConfigError("no output path: set \"output\" in the config or pass --out");
  return config;
}

int run(const CliOptions& opt, kbsim::ExperimentKind kind) {
  kbsim::ExperimentConfig config = prepare(opt, kind);
  std::size_t rows = 0;

  switch (kind) {
    case kbsim::ExperimentKind::Regret: {
      const auto result = kbsim::run_regret_experiment(config, opt.jobs);
      auto os = open_output(config.output);
      kbsim::write_regret_csv(result, os);
      for (const auto& r : result.runs) rows += r.rows.size();
      break;
    }
    case kbsim::ExperimentKind::Coverage: {
      const auto result = kbsim::run_coverage_experiment(config, opt.jobs);
      auto os = open_output(config.output);
      kbsim::write_coverage_csv(result, os);
      const std::string summary_path = config.summary_output.empty()
                                           ? config.output + ".summary.csv"
                                           : config.summary_output;
      auto ss = open_output(summary_path);
      kbsim::write_coverage_summary_csv(result, ss);
      for (const auto& r : result.runs) rows += r.rows.size();
      if (!opt.quiet)
        std::cout << "coverage summary written to " << summary_path << "\n";
      break;
    }
    case kbsim::ExperimentKind::InfoGain: {
      const auto result = kbsim::run_info_gain_sweep(config);
      auto os = open_output(config.output);
      kbsim::write_info_gain_csv(result, os);
      rows = result.rows.size();
      break;
    }
  }

  if (!opt.quiet)
    std::cout << to_string(kind) << ": " << rows << " rows written to "
              << config.output << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulation lab for kernelized bandits with Bernoulli rewards"};
  app.require_subcommand(1);

  CliOptions opt;
  CLI::App* regret = app.add_subcommand("regret", "Run policies and record regret");
  CLI::App* coverage =
      app.add_subcommand("coverage", "Evaluate confidence bounds against the truth");
  CLI::App* infogain =
      app.add_subcommand("infogain", "Greedy vs observed information gain");
  add_common(regret, opt);
  add_common(coverage, opt);
  add_common(infogain, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // prints help, exit 0
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return 1;
  }

  try {
    if (regret->parsed()) return run(opt, kbsim::ExperimentKind::Regret);
    if (coverage->parsed()) return run(opt, kbsim::ExperimentKind::Coverage);
    return run(opt, kbsim::ExperimentKind::InfoGain);
  } catch (const kbsim::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const kbsim::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
