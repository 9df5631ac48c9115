// Cost of the bisection-based KL confidence indices, the hot inner loop of
// kl-ucb style policies (one index per arm per round).

#include <benchmark/benchmark.h>

#include "kbsim/bounds.hpp"
#include "kbsim/rng.hpp"

using namespace kbsim;

namespace {

void bm_kl_upper_index(benchmark::State& state) {
  Xoshiro256pp rng(11);
  for (auto _ : state) {
    const double mean = rng.next_double();
    const double count = 1.0 + std::floor(999.0 * rng.next_double());
    const double thr = 8.0 * rng.next_double();
    benchmark::DoNotOptimize(kl_upper_index(mean, count, thr));
  }
}
BENCHMARK(bm_kl_upper_index);

void bm_kl_threshold(benchmark::State& state) {
  const KlThresholdParams params{1.0, 3.0, 0.05};
  int t = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(kl_threshold(++t, params));
  }
}
BENCHMARK(bm_kl_threshold);

void bm_subgaussian_width(benchmark::State& state) {
  Xoshiro256pp rng(13);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        subgaussian_width(1.0, 0.5, 4.0 * rng.next_double(), 0.05));
  }
}
BENCHMARK(bm_subgaussian_width);

}  // namespace
