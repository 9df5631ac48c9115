// Scaling of the two posterior representations: the full-history posterior
// pays O(t^2) per update and per query, the per-arm aggregated posterior a
// domain-sized refresh per observation. The crossover motivates using the
// aggregated form inside policies on finite decision sets.

#include <benchmark/benchmark.h>

#include "kbsim/gp_posterior.hpp"
#include "kbsim/point.hpp"
#include "kbsim/rng.hpp"

using namespace kbsim;

namespace {

DecisionSet line_domain(int m) {
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) pts.push_back(Point{static_cast<double>(i) / m});
  return DecisionSet(pts);
}

void bm_full_history_round(benchmark::State& state) {
  const int t = static_cast<int>(state.range(0));
  const DecisionSet domain = line_domain(16);
  Xoshiro256pp rng(7);
  for (auto _ : state) {
    state.PauseTiming();
    GpPosterior gp(KernelSpec::squared_exponential(0.3), 0.25);
    for (int s = 0; s < t; ++s)
      gp.update(domain[static_cast<int>(rng.next_below(16))],
                static_cast<double>(rng.next_below(2)));
    state.ResumeTiming();
    gp.update(domain[0], 1.0);
    double acc = 0.0;
    for (int j = 0; j < 16; ++j) acc += gp.mean(domain[j]) + gp.var(domain[j]);
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(bm_full_history_round)->Arg(64)->Arg(256)->Arg(1024);

void bm_aggregated_round(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const DecisionSet domain = line_domain(m);
  ArmGpPosterior gp(KernelSpec::squared_exponential(0.3), 0.25, domain);
  Xoshiro256pp rng(7);
  // Preload history; per-round cost depends only on m.
  for (int s = 0; s < 1024; ++s)
    gp.observe(static_cast<int>(rng.next_below(static_cast<std::uint64_t>(m))),
               static_cast<double>(rng.next_below(2)));
  for (auto _ : state) {
    gp.observe(0, 1.0);
    double acc = 0.0;
    for (int j = 0; j < m; ++j) acc += gp.mean(j) + gp.var(j);
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(bm_aggregated_round)->Arg(8)->Arg(16)->Arg(64)->Arg(256);

}  // namespace
