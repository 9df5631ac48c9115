#include "kbsim/config.hpp"

#include <json.hpp>

#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include "kbsim/errors.hpp"

namespace kbsim {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw ConfigError("config: " + path + ": " + msg);
}

const json& member(const json& obj, const std::string& path, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end())
    fail(path, std::string("missing required key \"") + key + "\"");
  return *it;
}

// Strictness: every object is checked against an explicit whitelist, so a
// misspelled or out-of-place key fails loudly instead of being ignored.
void check_keys(const json& obj, const std::string& path,
                std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) fail(path, "expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : allowed)
      if (it.key() == k) {
        known = true;
        break;
      }
    if (!known) fail(path, "unknown key \"" + it.key() + "\"");
  }
}

double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  return v.get<double>();
}

double get_number(const json& obj, const std::string& path, const char* key) {
  return as_number(member(obj, path, key), path + "." + key);
}

double get_number_or(const json& obj, const std::string& path, const char* key,
                     double fallback) {
  const auto it = obj.find(key);
  return it == obj.end() ? fallback : as_number(*it, path + "." + key);
}

int get_int(const json& obj, const std::string& path, const char* key) {
  const json& v = member(obj, path, key);
  if (!v.is_number_integer()) fail(path + "." + key, "expected an integer");
  return v.get<int>();
}

std::string get_string(const json& obj, const std::string& path, const char* key) {
  const json& v = member(obj, path, key);
  if (!v.is_string()) fail(path + "." + key, "expected a string");
  return v.get<std::string>();
}

std::vector<Point> parse_points(const json& v, const std::string& path) {
  if (!v.is_array() || v.empty()) fail(path, "expected a nonempty array of points");
  std::vector<Point> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const json& p = v[i];
    const std::string ppath = path + "[" + std::to_string(i) + "]";
    if (!p.is_array() || p.empty())
      fail(ppath, "expected a nonempty array of coordinates");
    std::vector<double> coords;
    coords.reserve(p.size());
    for (std::size_t j = 0; j < p.size(); ++j)
      coords.push_back(as_number(p[j], ppath + "[" + std::to_string(j) + "]"));
    out.emplace_back(std::move(coords));
  }
  return out;
}

KernelSpec parse_kernel(const json& v, const std::string& path) {
  if (!v.is_object()) fail(path, "expected a kernel object");
  const std::string family = get_string(v, path, "family");
  try {
    if (family == "sqexp") {
      check_keys(v, path, {"family", "lengthscale"});
      return KernelSpec::squared_exponential(get_number(v, path, "lengthscale"));
    }
    if (family == "matern") {
      check_keys(v, path, {"family", "nu", "lengthscale"});
      return KernelSpec::matern(get_number(v, path, "nu"),
                                get_number(v, path, "lengthscale"));
    }
    if (family == "delta") {
      check_keys(v, path, {"family"});
      return KernelSpec::delta();
    }
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
  fail(path + ".family",
       "unknown kernel family \"" + family + "\" (expected sqexp, matern or delta)");
}

EnvironmentConfig parse_environment(const json& v, const std::string& path) {
  check_keys(v, path, {"kernel", "points", "centers", "raw_weights", "norm_bound"});
  EnvironmentConfig env;
  env.kernel = parse_kernel(member(v, path, "kernel"), path + ".kernel");
  env.points = parse_points(member(v, path, "points"), path + ".points");
  env.centers = parse_points(member(v, path, "centers"), path + ".centers");
  const json& w = member(v, path, "raw_weights");
  if (!w.is_array() || w.empty())
    fail(path + ".raw_weights", "expected a nonempty array of numbers");
  for (std::size_t i = 0; i < w.size(); ++i)
    env.raw_weights.push_back(
        as_number(w[i], path + ".raw_weights[" + std::to_string(i) + "]"));
  env.norm_bound = get_number(v, path, "norm_bound");
  if (!(env.norm_bound > 0.0)) fail(path + ".norm_bound", "must be positive");
  return env;
}

void check_delta_range(double delta, const std::string& path) {
  if (!(delta > 0.0 && delta < 1.0)) fail(path, "must lie in the open interval (0,1)");
}

PolicyConfig parse_policy(const json& v, const std::string& path) {
  if (!v.is_object()) fail(path, "expected a policy object");
  PolicyConfig p;
  p.kind = get_string(v, path, "policy");
  if (p.kind == "igp_ucb") {
    check_keys(v, path, {"policy", "label", "B", "lambda", "nu2", "delta"});
    p.B = get_number_or(v, path, "B", p.B);
    p.lambda = get_number_or(v, path, "lambda", p.lambda);
    p.noise_var = get_number_or(v, path, "nu2", p.noise_var);
    if (!(p.B > 0.0)) fail(path + ".B", "must be positive");
    if (!(p.lambda > 0.0)) fail(path + ".lambda", "must be positive");
    if (!(p.noise_var > 0.0)) fail(path + ".nu2", "must be positive");
  } else if (p.kind == "kl_ucb") {
    check_keys(v, path, {"policy", "label", "c1", "c2", "delta"});
    p.c1 = get_number_or(v, path, "c1", p.c1);
    p.c2 = get_number_or(v, path, "c2", p.c2);
    if (!(p.c1 >= 0.0)) fail(path + ".c1", "must be nonnegative");
    if (!(p.c2 >= 0.0)) fail(path + ".c2", "must be nonnegative");
  } else if (p.kind == "kernel_beta_ucb") {
    check_keys(v, path, {"policy", "label", "c1", "c2", "alpha0", "beta0", "delta"});
    p.c1 = get_number_or(v, path, "c1", p.c1);
    p.c2 = get_number_or(v, path, "c2", p.c2);
    p.alpha0 = get_number_or(v, path, "alpha0", p.alpha0);
    p.beta0 = get_number_or(v, path, "beta0", p.beta0);
    if (!(p.c1 >= 0.0)) fail(path + ".c1", "must be nonnegative");
    if (!(p.c2 >= 0.0)) fail(path + ".c2", "must be nonnegative");
    if (!(p.alpha0 > 0.0)) fail(path + ".alpha0", "must be positive");
    if (!(p.beta0 > 0.0)) fail(path + ".beta0", "must be positive");
  } else if (p.kind == "uniform_random" || p.kind == "oracle") {
    check_keys(v, path, {"policy", "label"});
  } else if (p.kind == "fixed") {
    check_keys(v, path, {"policy", "label", "arm"});
    p.arm = get_int(v, path, "arm");
    if (p.arm < 0) fail(path + ".arm", "must be nonnegative");
  } else {
    fail(path + ".policy", "unknown policy \"" + p.kind + "\"");
  }
  if (v.contains("delta")) {
    const double d = get_number(v, path, "delta");
    check_delta_range(d, path + ".delta");
    p.delta = d;
  }
  p.label = v.contains("label") ? get_string(v, path, "label") : p.kind;
  if (p.label.empty()) fail(path + ".label", "must be nonempty");
  return p;
}

GammaVariant parse_gamma_variant(const json& obj, const std::string& path) {
  const auto it = obj.find("gamma_variant");
  if (it == obj.end()) return GammaVariant::Observed;
  if (!it->is_string()) fail(path + ".gamma_variant", "expected a string");
  const std::string s = it->get<std::string>();
  if (s == "observed") return GammaVariant::Observed;
  if (s == "greedy") return GammaVariant::Greedy;
  fail(path + ".gamma_variant", "expected \"observed\" or \"greedy\"");
}

BoundsConfig parse_bounds(const json& v, const std::string& path) {
  check_keys(v, path,
             {"lambda", "nu2", "c1", "c2", "alpha0", "beta0", "gamma_variant"});
  BoundsConfig b;
  b.lambda = get_number_or(v, path, "lambda", b.lambda);
  b.noise_var = get_number_or(v, path, "nu2", b.noise_var);
  b.c1 = get_number_or(v, path, "c1", b.c1);
  b.c2 = get_number_or(v, path, "c2", b.c2);
  b.alpha0 = get_number_or(v, path, "alpha0", b.alpha0);
  b.beta0 = get_number_or(v, path, "beta0", b.beta0);
  b.gamma_variant = parse_gamma_variant(v, path);
  if (!(b.lambda > 0.0)) fail(path + ".lambda", "must be positive");
  if (!(b.noise_var > 0.0)) fail(path + ".nu2", "must be positive");
  if (!(b.c1 >= 0.0)) fail(path + ".c1", "must be nonnegative");
  if (!(b.c2 >= 0.0)) fail(path + ".c2", "must be nonnegative");
  if (!(b.alpha0 > 0.0)) fail(path + ".alpha0", "must be positive");
  if (!(b.beta0 > 0.0)) fail(path + ".beta0", "must be positive");
  return b;
}

constexpr int kCoverageHorizonCap = 5000;

}  // namespace

std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::Regret: return "regret";
    case ExperimentKind::Coverage: return "coverage";
    case ExperimentKind::InfoGain: return "infogain";
  }
  return "?";
}

ExperimentConfig parse_experiment_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config: $: top level must be an object");

  check_keys(root, "$",
             {"version", "kind", "environment", "policies", "collector", "bounds",
              "horizon", "seeds", "delta", "thin", "output", "summary_output",
              "override_horizon_cap"});

  const json& ver = member(root, "$", "version");
  if (!ver.is_number_integer() || ver.get<int>() != 1)
    fail("$.version", "unsupported config version (expected 1)");

  ExperimentConfig cfg;
  const std::string kind = get_string(root, "$", "kind");
  if (kind == "regret")
    cfg.kind = ExperimentKind::Regret;
  else if (kind == "coverage")
    cfg.kind = ExperimentKind::Coverage;
  else if (kind == "infogain")
    cfg.kind = ExperimentKind::InfoGain;
  else
    fail("$.kind", "expected \"regret\", \"coverage\" or \"infogain\"");

  // Keys that only make sense for one kind are rejected elsewhere, same as
  // unknown keys: silently ignored configuration is how experiments lie.
  const auto reject_unless = [&](const char* key, bool ok) {
    if (root.contains(key) && !ok)
      fail(std::string("$.") + key,
           "not valid for kind \"" + std::string(to_string(cfg.kind)) + "\"");
  };
  reject_unless("policies", cfg.kind == ExperimentKind::Regret);
  reject_unless("collector", cfg.kind == ExperimentKind::Coverage);
  reject_unless("bounds", cfg.kind != ExperimentKind::Regret);
  reject_unless("summary_output", cfg.kind == ExperimentKind::Coverage);
  reject_unless("override_horizon_cap", cfg.kind == ExperimentKind::Coverage);

  cfg.environment = parse_environment(member(root, "$", "environment"), "$.environment");

  cfg.horizon = get_int(root, "$", "horizon");
  if (cfg.horizon < 1) fail("$.horizon", "must be >= 1");

  cfg.delta = get_number(root, "$", "delta");
  check_delta_range(cfg.delta, "$.delta");

  const json& seeds = member(root, "$", "seeds");
  if (!seeds.is_array() || seeds.empty())
    fail("$.seeds", "expected a nonempty array of integers");
  std::set<std::uint64_t> seen;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    const std::string spath = "$.seeds[" + std::to_string(i) + "]";
    if (!seeds[i].is_number_integer()) fail(spath, "expected an integer");
    if (seeds[i].is_number_integer() && seeds[i].get<long long>() < 0)
      fail(spath, "must be nonnegative");
    const auto s = seeds[i].get<std::uint64_t>();
    if (!seen.insert(s).second) fail(spath, "duplicate seed");
    cfg.seeds.push_back(s);
  }

  if (root.contains("thin")) {
    cfg.thin = get_int(root, "$", "thin");
    if (cfg.thin < 1) fail("$.thin", "must be >= 1");
  }
  if (root.contains("output")) cfg.output = get_string(root, "$", "output");
  if (root.contains("summary_output"))
    cfg.summary_output = get_string(root, "$", "summary_output");
  if (root.contains("override_horizon_cap")) {
    const json& v = root["override_horizon_cap"];
    if (!v.is_boolean()) fail("$.override_horizon_cap", "expected a boolean");
    cfg.override_horizon_cap = v.get<bool>();
  }

  const int num_arms = static_cast<int>(cfg.environment.points.size());
  const auto check_fixed_arm = [&](const PolicyConfig& p, const std::string& path) {
    if (p.kind == "fixed" && p.arm >= num_arms)
      fail(path + ".arm", "arm index " + std::to_string(p.arm) +
                              " out of range for a decision set of " +
                              std::to_string(num_arms) + " points");
  };

  if (cfg.kind == ExperimentKind::Regret) {
    const json& pols = member(root, "$", "policies");
    if (!pols.is_array() || pols.empty())
      fail("$.policies", "expected a nonempty array of policy objects");
    std::set<std::string> labels;
    for (std::size_t i = 0; i < pols.size(); ++i) {
      const std::string ppath = "$.policies[" + std::to_string(i) + "]";
      cfg.policies.push_back(parse_policy(pols[i], ppath));
      check_fixed_arm(cfg.policies.back(), ppath);
      if (!labels.insert(cfg.policies.back().label).second)
        fail(ppath + ".label",
             "duplicate policy label \"" + cfg.policies.back().label + "\"");
    }
  }

  cfg.collector.kind = "uniform_random";
  cfg.collector.label = "uniform_random";
  if (cfg.kind == ExperimentKind::Coverage) {
    if (root.contains("collector")) {
      cfg.collector = parse_policy(root["collector"], "$.collector");
      check_fixed_arm(cfg.collector, "$.collector");
    }
    if (cfg.horizon > kCoverageHorizonCap && !cfg.override_horizon_cap)
      fail("$.horizon",
           "coverage runs are capped at " + std::to_string(kCoverageHorizonCap) +
               " rounds; set override_horizon_cap to raise the cap");
  }

  if (root.contains("bounds"))
    cfg.bounds = parse_bounds(root["bounds"], "$.bounds");

  // Dry-run construction so malformed environments (duplicate points, mean
  // payoff outside [0,1], ...) are reported at parse time as config errors.
  try {
    make_environment(cfg.environment, 0);
  } catch (const std::invalid_argument& e) {
    fail("$.environment", e.what());
  }

  return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config: cannot open \"" + path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_experiment_config(buf.str());
}

void apply_seed_offset(ExperimentConfig& config, std::uint64_t offset) {
  for (auto& s : config.seeds) s += offset;
}

BanditEnvironment make_environment(const EnvironmentConfig& config, std::uint64_t seed) {
  DecisionSet domain(config.points);
  RkhsFunction f = make_bounded_function(config.kernel, config.centers,
                                         config.raw_weights, config.norm_bound, domain);
  return BanditEnvironment(std::move(f), std::move(domain), seed);
}

std::unique_ptr<Policy> make_policy(const PolicyConfig& config,
                                    const KernelSpec& model_kernel, int oracle_arm) {
  if (config.kind == "igp_ucb")
    return std::make_unique<IgpUcbPolicy>(
        IgpUcbConfig{config.B, config.lambda, config.noise_var}, model_kernel);
  if (config.kind == "kl_ucb")
    return std::make_unique<KlUcbPolicy>(config.c1, config.c2);
  if (config.kind == "kernel_beta_ucb")
    return std::make_unique<KernelBetaUcbPolicy>(
        KernelBetaUcbConfig{config.alpha0, config.beta0, config.c1, config.c2},
        model_kernel);
  if (config.kind == "uniform_random")
    return std::make_unique<UniformRandomPolicy>();
  if (config.kind == "fixed")
    return std::make_unique<FixedArmPolicy>(config.arm);
  if (config.kind == "oracle")
    return std::make_unique<FixedArmPolicy>(oracle_arm, "oracle");
  throw ConfigError("config: unknown policy \"" + config.kind + "\"");
}

}  // namespace kbsim
