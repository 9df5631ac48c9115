#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <string>

#include "kbsim/config.hpp"
#include "kbsim/errors.hpp"

using namespace kbsim;
using nlohmann::json;

namespace {

json base_regret() {
  return json::parse(R"({
    "version": 1,
    "kind": "regret",
    "environment": {
      "kernel": {"family": "delta"},
      "points": [[0], [1], [2]],
      "centers": [[0], [1], [2]],
      "raw_weights": [0.2, 0.5, 0.8],
      "norm_bound": 2.0
    },
    "policies": [{"policy": "kl_ucb"}],
    "horizon": 50,
    "seeds": [1, 2],
    "delta": 0.05
  })");
}

json base_coverage() {
  json j = base_regret();
  j["kind"] = "coverage";
  j.erase("policies");
  j["collector"] = {{"policy", "uniform_random"}};
  return j;
}

ExperimentConfig parse(const json& j) { return parse_experiment_config(j.dump()); }

void expect_error(const json& j, const char* fragment) {
  CHECK_THROWS_WITH_AS(parse(j), doctest::Contains(fragment), ConfigError);
}

}  // namespace

TEST_CASE("a minimal regret config parses with defaults filled in") {
  const auto cfg = parse(base_regret());
  CHECK(cfg.kind == ExperimentKind::Regret);
  CHECK(cfg.horizon == 50);
  CHECK(cfg.delta == 0.05);
  CHECK(cfg.thin == 1);
  CHECK(cfg.seeds == std::vector<std::uint64_t>{1, 2});
  REQUIRE(cfg.policies.size() == 1);
  CHECK(cfg.policies[0].kind == "kl_ucb");
  CHECK(cfg.policies[0].label == "kl_ucb");  // label defaults to the kind
  CHECK(cfg.policies[0].c1 == 1.0);
  CHECK(cfg.policies[0].c2 == 3.0);
  CHECK_FALSE(cfg.policies[0].delta.has_value());
  CHECK(cfg.environment.points.size() == 3);
}

TEST_CASE("version is mandatory and pinned") {
  json j = base_regret();
  j.erase("version");
  expect_error(j, "version");
  j["version"] = 2;
  expect_error(j, "unsupported config version");
  j["version"] = "1";
  expect_error(j, "version");
}

TEST_CASE("unknown keys are rejected at every level") {
  json j = base_regret();
  j["bogus"] = 1;
  expect_error(j, "unknown key \"bogus\"");

  j = base_regret();
  j["environment"]["extra"] = 1;
  expect_error(j, "unknown key \"extra\"");

  j = base_regret();
  j["environment"]["kernel"]["lengthscale"] = 0.5;  // delta takes no lengthscale
  expect_error(j, "lengthscale");

  j = base_regret();
  j["policies"][0]["B"] = 2.0;  // regression-policy knob on a count policy
  expect_error(j, "unknown key \"B\"");

  j = base_coverage();
  j["bounds"] = {{"c1", 1.0}, {"oops", 2.0}};
  expect_error(j, "unknown key \"oops\"");
}

TEST_CASE("kind-specific keys are rejected on the wrong kind") {
  json j = base_regret();
  j["collector"] = {{"policy", "uniform_random"}};
  expect_error(j, "$.collector");

  j = base_regret();
  j["summary_output"] = "x.csv";
  expect_error(j, "$.summary_output");

  j = base_regret();
  j["bounds"] = {{"c1", 1.0}};
  expect_error(j, "$.bounds");

  j = base_coverage();
  j["policies"] = json::array({{{"policy", "kl_ucb"}}});
  expect_error(j, "$.policies");

  json g = base_regret();
  g["kind"] = "infogain";
  g.erase("policies");
  CHECK_NOTHROW(parse(g));  // infogain needs neither policies nor collector
}

TEST_CASE("kernel parsing covers all families and rejects bad parameters") {
  json j = base_regret();
  j["environment"]["kernel"] = {{"family", "sqexp"}, {"lengthscale", 0.3}};
  CHECK(parse(j).environment.kernel.family ==
        KernelSpec::Family::SquaredExponential);

  j["environment"]["kernel"] = {{"family", "matern"}, {"nu", 1.5}, {"lengthscale", 0.7}};
  const auto cfg = parse(j);
  CHECK(cfg.environment.kernel.family == KernelSpec::Family::Matern);
  CHECK(cfg.environment.kernel.smoothness == 1.5);

  j["environment"]["kernel"] = {{"family", "matern"}, {"nu", 2.0}, {"lengthscale", 0.7}};
  expect_error(j, "smoothness");
  j["environment"]["kernel"] = {{"family", "sqexp"}, {"lengthscale", -1.0}};
  expect_error(j, "lengthscale");
  j["environment"]["kernel"] = {{"family", "cubic"}};
  expect_error(j, "unknown kernel family");
}

TEST_CASE("environment problems surface at parse time") {
  json j = base_regret();
  j["environment"]["raw_weights"] = {0.2, 0.5, 1.5};  // f(arm 2) = 1.5
  expect_error(j, "$.environment");

  j = base_regret();
  j["environment"]["points"] = {{0.0}, {0.0}, {1.0}};  // duplicate arm
  expect_error(j, "duplicate");

  j = base_regret();
  j["environment"]["norm_bound"] = 0.0;
  expect_error(j, "norm_bound");
}

TEST_CASE("seed list validation") {
  json j = base_regret();
  j["seeds"] = json::array();
  expect_error(j, "seeds");
  j["seeds"] = {1, 1};
  expect_error(j, "duplicate seed");
  j["seeds"] = {1, -2};
  expect_error(j, "nonnegative");
  j["seeds"] = {1, 2.5};
  expect_error(j, "integer");
}

TEST_CASE("scalar field validation") {
  json j = base_regret();
  j["horizon"] = 0;
  expect_error(j, "horizon");
  j = base_regret();
  j["delta"] = 1.0;
  expect_error(j, "delta");
  j = base_regret();
  j["thin"] = 0;
  expect_error(j, "thin");
  j = base_regret();
  j["kind"] = "speed";
  expect_error(j, "$.kind");
}

TEST_CASE("coverage horizon cap with an explicit override") {
  json j = base_coverage();
  j["horizon"] = 6000;
  expect_error(j, "capped");
  j["override_horizon_cap"] = true;
  CHECK(parse(j).horizon == 6000);
  // The override knob itself is coverage-only.
  json r = base_regret();
  r["override_horizon_cap"] = true;
  expect_error(r, "override_horizon_cap");
}

TEST_CASE("policy labels must be unique, including defaulted ones") {
  json j = base_regret();
  j["policies"] = json::array(
      {{{"policy", "kl_ucb"}}, {{"policy", "kl_ucb"}, {"label", "tuned"}, {"c1", 2.0}}});
  CHECK_NOTHROW(parse(j));
  j["policies"][1]["label"] = "kl_ucb";
  expect_error(j, "duplicate policy label");
  j["policies"][1].erase("label");
  expect_error(j, "duplicate policy label");
}

TEST_CASE("per-policy overrides parse and validate") {
  json j = base_regret();
  j["policies"] = json::array({{{"policy", "igp_ucb"},
                                {"B", 2.0},
                                {"lambda", 0.25},
                                {"nu2", 0.5},
                                {"delta", 0.01}}});
  const auto cfg = parse(j);
  CHECK(cfg.policies[0].B == 2.0);
  CHECK(cfg.policies[0].lambda == 0.25);
  CHECK(cfg.policies[0].noise_var == 0.5);
  CHECK(cfg.policies[0].delta == 0.01);

  j["policies"][0]["delta"] = 0.0;
  expect_error(j, "delta");
  j["policies"] = json::array({{{"policy", "warp_drive"}}});
  expect_error(j, "unknown policy");
}

TEST_CASE("pinned-arm policies are range-checked against the decision set") {
  json j = base_regret();
  j["policies"] = json::array({{{"policy", "fixed"}, {"arm", 2}}});
  CHECK_NOTHROW(parse(j));
  j["policies"] = json::array({{{"policy", "fixed"}, {"arm", 3}}});
  expect_error(j, "out of range");
  j["policies"] = json::array({{{"policy", "fixed"}, {"arm", -1}}});
  expect_error(j, "nonnegative");
}

TEST_CASE("malformed json is a config error with position info") {
  CHECK_THROWS_AS(parse_experiment_config("{\"version\": 1,"), ConfigError);
  CHECK_THROWS_AS(parse_experiment_config("[1,2]"), ConfigError);
}

TEST_CASE("seed offset shifts every seed") {
  auto cfg = parse(base_regret());
  apply_seed_offset(cfg, 100);
  CHECK(cfg.seeds == std::vector<std::uint64_t>{101, 102});
}

TEST_CASE("config file loading") {
  const std::string path = "/tmp/kbsim_test_config.json";
  {
    std::ofstream out(path);
    out << base_regret().dump();
  }
  const auto cfg = load_experiment_config(path);
  CHECK(cfg.kind == ExperimentKind::Regret);
  std::remove(path.c_str());
  CHECK_THROWS_WITH_AS(load_experiment_config("/tmp/definitely_missing_kbsim.json"),
                       doctest::Contains("cannot open"), ConfigError);
}

TEST_CASE("policy factory wires the oracle to the optimum arm") {
  const auto cfg = parse(base_regret());
  auto env = make_environment(cfg.environment, 0);
  CHECK(env.optimum_arm() == 2);

  PolicyConfig oracle;
  oracle.kind = "oracle";
  oracle.label = "oracle";
  auto policy = make_policy(oracle, cfg.environment.kernel, env.optimum_arm());
  policy->reset(env.decision_set(), 5, 0.05);
  CHECK(policy->select(1) == 2);
}
