#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const char* cli_path() { return KBSIM_CLI_PATH; }

struct CliResult {
  int exit_code;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

CliResult run_cli(const fs::path& dir, const std::string& args) {
  const fs::path out = dir / "stdout.txt";
  const fs::path err = dir / "stderr.txt";
  const std::string cmd = std::string(cli_path()) + " " + args + " > " +
                          out.string() + " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, slurp(out), slurp(err)};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("kbsim_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

const char* kRegretConfig = R"({
  "version": 1,
  "kind": "regret",
  "environment": {
    "kernel": {"family": "delta"},
    "points": [[0], [1], [2]],
    "centers": [[0], [1], [2]],
    "raw_weights": [0.2, 0.5, 0.8],
    "norm_bound": 2.0
  },
  "policies": [{"policy": "kl_ucb"}, {"policy": "uniform_random"}],
  "horizon": 60,
  "seeds": [1, 2],
  "delta": 0.05,
  "thin": 10
})";

const char* kCoverageConfig = R"({
  "version": 1,
  "kind": "coverage",
  "environment": {
    "kernel": {"family": "delta"},
    "points": [[0], [1], [2]],
    "centers": [[0], [1], [2]],
    "raw_weights": [0.2, 0.5, 0.8],
    "norm_bound": 2.0
  },
  "horizon": 40,
  "seeds": [1],
  "delta": 0.05,
  "thin": 10
})";

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

}  // namespace

TEST_CASE("cli requires a subcommand and rejects unknown flags") {
  TempDir dir;
  CHECK(run_cli(dir.path, "").exit_code == 1);
  const auto bad = run_cli(dir.path, "regret --config x.json --frobnicate");
  CHECK(bad.exit_code == 1);
  CHECK(bad.err.find("Usage") != std::string::npos);
  CHECK(run_cli(dir.path, "--help").exit_code == 0);
}

TEST_CASE("cli maps config problems to exit code 1") {
  TempDir dir;
  // Missing file.
  CHECK(run_cli(dir.path, "regret --config " + (dir.path / "nope.json").string() +
                              " --out " + (dir.path / "o.csv").string())
            .exit_code == 1);
  // Kind mismatch between config and subcommand.
  const fs::path cov = dir.path / "coverage.json";
  write_file(cov, kCoverageConfig);
  const auto r = run_cli(dir.path, "regret --config " + cov.string() + " --out " +
                                       (dir.path / "o.csv").string());
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("kind") != std::string::npos);
  // Malformed json.
  const fs::path broken = dir.path / "broken.json";
  write_file(broken, "{\"version\": 1,");
  CHECK(run_cli(dir.path, "regret --config " + broken.string()).exit_code == 1);
}

TEST_CASE("cli regret run: output file, header, quiet mode, reproducibility") {
  TempDir dir;
  const fs::path cfg = dir.path / "regret.json";
  write_file(cfg, kRegretConfig);
  const fs::path out = dir.path / "regret.csv";

  const auto first =
      run_cli(dir.path, "regret --config " + cfg.string() + " --out " + out.string());
  REQUIRE(first.exit_code == 0);
  CHECK(first.out.find("regret:") != std::string::npos);
  CHECK(first.out.find(out.string()) != std::string::npos);
  const std::string bytes = slurp(out);
  CHECK(bytes.substr(0, bytes.find('\n')) ==
        "policy,seed,t,arm,reward,instantaneous_regret,cumulative_regret");

  // Byte-identical on a rerun; silent with --quiet.
  const auto second = run_cli(dir.path, "regret --config " + cfg.string() +
                                            " --out " + out.string() + " --quiet");
  REQUIRE(second.exit_code == 0);
  CHECK(second.out.empty());
  CHECK(slurp(out) == bytes);

  // A seed offset changes the stream.
  const auto shifted = run_cli(dir.path, "regret --config " + cfg.string() +
                                             " --out " + out.string() +
                                             " --seed-offset 1000");
  REQUIRE(shifted.exit_code == 0);
  CHECK(slurp(out) != bytes);

  // More workers, same bytes.
  const auto jobs = run_cli(dir.path, "regret --config " + cfg.string() +
                                          " --out " + out.string() + " --jobs 3");
  REQUIRE(jobs.exit_code == 0);
  CHECK(slurp(out) == bytes);
}

TEST_CASE("cli coverage run writes the detail and summary files") {
  TempDir dir;
  const fs::path cfg = dir.path / "coverage.json";
  write_file(cfg, kCoverageConfig);
  const fs::path out = dir.path / "cov.csv";
  const auto r = run_cli(dir.path, "coverage --config " + cfg.string() + " --out " +
                                       out.string());
  REQUIRE(r.exit_code == 0);
  const std::string detail = slurp(out);
  CHECK(detail.substr(0, detail.find('\n')) ==
        "bound,seed,t,arm,lower,upper,contains_f,width");
  const std::string summary = slurp(out.string() + ".summary.csv");
  CHECK(summary.substr(0, summary.find('\n')) == "bound,seed,arm,violated");
  // 2 whole-domain rows + 2 * 3 per-arm rows for the single seed.
  CHECK(std::count(summary.begin(), summary.end(), '\n') == 1 + 2 + 6);
}

TEST_CASE("cli infogain run") {
  TempDir dir;
  const fs::path cfg = dir.path / "infogain.json";
  std::string text = kCoverageConfig;
  text.replace(text.find("\"coverage\""), 10, "\"infogain\"");
  write_file(cfg, text);
  const fs::path out = dir.path / "gain.csv";
  const auto r = run_cli(dir.path, "infogain --config " + cfg.string() + " --out " +
                                       out.string());
  REQUIRE(r.exit_code == 0);
  const std::string bytes = slurp(out);
  CHECK(bytes.substr(0, bytes.find('\n')) ==
        "seed,t,greedy_gamma,observed_gain,inversion");
}
