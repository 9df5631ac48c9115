// Gram-matrix assembly across kernel families, the setup cost of every
// aggregated posterior and of environment construction.

#include <benchmark/benchmark.h>

#include "kbsim/kernel.hpp"
#include "kbsim/point.hpp"
#include "kbsim/rng.hpp"

using namespace kbsim;

namespace {

std::vector<Point> random_points(int n, int dim, std::uint64_t seed) {
  Xoshiro256pp rng(seed);
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    std::vector<double> c;
    for (int d = 0; d < dim; ++d) c.push_back(rng.next_double());
    pts.push_back(Point{std::move(c)});
  }
  return pts;
}

void bm_gram(benchmark::State& state, const KernelSpec& kernel) {
  const int n = static_cast<int>(state.range(0));
  const auto pts = random_points(n, 3, 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gram_matrix(kernel, pts));
  }
}

void bm_gram_sqexp(benchmark::State& state) {
  bm_gram(state, KernelSpec::squared_exponential(0.5));
}
void bm_gram_matern(benchmark::State& state) {
  bm_gram(state, KernelSpec::matern(2.5, 0.5));
}
void bm_gram_delta(benchmark::State& state) { bm_gram(state, KernelSpec::delta()); }

BENCHMARK(bm_gram_sqexp)->Arg(32)->Arg(128);
BENCHMARK(bm_gram_matern)->Arg(32)->Arg(128);
BENCHMARK(bm_gram_delta)->Arg(32)->Arg(128);

}  // namespace

BENCHMARK_MAIN();
