#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "kbsim/bernoulli.hpp"
#include "kbsim/bounds.hpp"
#include "kbsim/gp_posterior.hpp"
#include "kbsim/rng.hpp"
#include "oracles.hpp"

using namespace kbsim;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("bernoulli relative entropy: exact values and conventions") {
  CHECK(bernoulli_kl(0.0, 0.0) == 0.0);
  CHECK(bernoulli_kl(1.0, 1.0) == 0.0);
  CHECK(bernoulli_kl(0.3, 0.3) == 0.0);
  CHECK(bernoulli_kl(0.5, 0.75) ==
        doctest::Approx(0.14384103622589042).epsilon(1e-14));
  CHECK(bernoulli_kl(0.5, 0.75) ==
        doctest::Approx(0.5 * std::log(4.0 / 3.0)).epsilon(1e-14));
  // Boundary reference points: d(0,b) = -log(1-b), d(1,b) = -log b.
  CHECK(bernoulli_kl(0.0, 0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK(bernoulli_kl(1.0, 0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  // Absolutely continuous nowhere: infinite divergence.
  CHECK(bernoulli_kl(0.5, 0.0) == kInf);
  CHECK(bernoulli_kl(0.5, 1.0) == kInf);
  CHECK(bernoulli_kl(0.0, 1.0) == kInf);
  CHECK(bernoulli_kl(1.0, 0.0) == kInf);
}

TEST_CASE("bernoulli relative entropy: domain, positivity, convexity") {
  CHECK_THROWS_AS(bernoulli_kl(-0.1, 0.5), std::domain_error);
  CHECK_THROWS_AS(bernoulli_kl(1.1, 0.5), std::domain_error);
  CHECK_THROWS_AS(bernoulli_kl(0.5, -0.1), std::domain_error);
  CHECK_THROWS_AS(bernoulli_kl(0.5, 1.1), std::domain_error);

  Xoshiro256pp rng(41);
  for (int rep = 0; rep < 200; ++rep) {
    const double a = rng.next_double();
    const double b = rng.next_double();
    const double d = bernoulli_kl(a, b);
    CHECK(d >= 0.0);
    CHECK(d == doctest::Approx(oracle::bernoulli_kl_ref(a, b)).epsilon(1e-13));
    if (a != b) CHECK(d > 0.0);
  }

  // Convexity in the second argument: nonnegative second differences.
  const double a = 0.35;
  for (int i = 1; i < 99; ++i) {
    const double b = i / 100.0;
    const double second = bernoulli_kl(a, b - 0.01) - 2.0 * bernoulli_kl(a, b) +
                          bernoulli_kl(a, b + 0.01);
    CHECK(second >= -1e-9);
  }
}

TEST_CASE("threshold schedule values and clamping") {
  // log(t/delta) = 1 exactly: the log-log term vanishes at the knee.
  CHECK(kl_threshold(1, {1.0, 3.0, std::exp(-1.0)}) ==
        doctest::Approx(1.0).epsilon(1e-12));
  // log(t/delta) = e with the log-log term switched off.
  CHECK(kl_threshold(1, {1.0, 0.0, std::exp(-std::exp(1.0))}) ==
        doctest::Approx(std::exp(1.0)).epsilon(1e-12));
  // Below the knee the log-log term is clamped to zero, not negative.
  CHECK(kl_threshold(1, {1.0, 3.0, 0.5}) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));
  // Above the knee both terms contribute.
  const double lt = std::log(100.0 / 0.05);
  CHECK(kl_threshold(100, {1.0, 3.0, 0.05}) ==
        doctest::Approx(lt + 3.0 * std::log(lt)).epsilon(1e-12));

  double last = 0.0;
  for (int t = 1; t <= 200; ++t) {
    const double thr = kl_threshold(t, {1.0, 3.0, 0.05});
    CHECK(thr >= last);
    last = thr;
  }

  CHECK_THROWS_AS(kl_threshold(0, {}), std::invalid_argument);
  CHECK_THROWS_AS(kl_threshold(1, {1.0, 3.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(kl_threshold(1, {1.0, 3.0, 1.0}), std::invalid_argument);
}

TEST_CASE("kl indices: vacuous and degenerate cases are exact") {
  CHECK(kl_upper_index(0.3, 0.0, 5.0) == 1.0);
  CHECK(kl_upper_index(1.0, 10.0, 0.1) == 1.0);
  CHECK(kl_upper_index(0.3, 12.0, 0.0) == 0.3);  // exact, not approximate
  CHECK(kl_lower_index(0.3, 0.0, 5.0) == 0.0);
  CHECK(kl_lower_index(0.0, 10.0, 0.1) == 0.0);
  CHECK(kl_lower_index(0.7, 12.0, 0.0) == 0.7);
}

TEST_CASE("kl indices at degenerate means match the closed forms") {
  // mean 0: n * (-log(1-q)) = thr  =>  q = 1 - exp(-thr/n).
  CHECK(std::abs(kl_upper_index(0.0, 1.0, std::log(2.0)) - 0.5) < 1e-9);
  // mean 1: n * (-log q) = thr  =>  q = exp(-thr/n).
  CHECK(std::abs(kl_lower_index(1.0, 1.0, std::log(2.0)) - 0.5) < 1e-9);
  Xoshiro256pp rng(42);
  for (int rep = 0; rep < 50; ++rep) {
    const double n = 1.0 + 99.0 * rng.next_double();
    const double thr = 5.0 * rng.next_double();
    CHECK(std::abs(kl_upper_index(0.0, n, thr) - (1.0 - std::exp(-thr / n))) < 1e-9);
    CHECK(std::abs(kl_lower_index(1.0, n, thr) - std::exp(-thr / n)) < 1e-9);
  }
}

TEST_CASE("kl indices agree with an exhaustive grid scan") {
  Xoshiro256pp rng(43);
  const int grid = 100000;
  for (int rep = 0; rep < 60; ++rep) {
    const double mean = rep % 10 == 0 ? 0.0 : rng.next_double();
    const double count = 1.0 + 500.0 * rng.next_double();
    const double thr = 8.0 * rng.next_double();
    const double up = kl_upper_index(mean, count, thr);
    const double lo = kl_lower_index(mean, count, thr);
    // Both the scan and the bisection approximate the boundary from the
    // feasible side, so they differ by at most one grid step.
    CHECK(std::abs(up - oracle::grid_kl_upper(mean, count, thr, grid)) < 1.1e-5);
    CHECK(std::abs(lo - oracle::grid_kl_lower(mean, count, thr, grid)) < 1.1e-5);
  }
}

TEST_CASE("kl indices stay feasible and ordered") {
  Xoshiro256pp rng(44);
  for (int rep = 0; rep < 200; ++rep) {
    const double mean = rng.next_double();
    const double count = 1.0 + 200.0 * rng.next_double();
    const double thr = 6.0 * rng.next_double();
    const double up = kl_upper_index(mean, count, thr);
    const double lo = kl_lower_index(mean, count, thr);
    CHECK(lo <= mean);
    CHECK(mean <= up);
    CHECK(up <= 1.0);
    CHECK(lo >= 0.0);
    // Returned endpoints sit on the feasible side of the constraint.
    CHECK(count * bernoulli_kl(mean, up) <= thr + 1e-12);
    CHECK(count * bernoulli_kl(mean, lo) <= thr + 1e-12);
  }
}

TEST_CASE("kl upper index is monotone in threshold and count") {
  const double mean = 0.4;
  double last = mean;
  for (int i = 0; i <= 40; ++i) {
    const double up = kl_upper_index(mean, 25.0, i * 0.2);
    CHECK(up >= last - 1e-12);
    last = up;
  }
  last = 1.0;
  for (double n = 1.0; n <= 400.0; n *= 2.0) {
    const double up = kl_upper_index(mean, n, 2.0);
    CHECK(up <= last + 1e-12);
    last = up;
  }
}

TEST_CASE("kl index argument validation") {
  CHECK_THROWS_AS(kl_upper_index(-0.1, 1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(kl_upper_index(1.1, 1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(kl_upper_index(0.5, -1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(kl_upper_index(0.5, 1.0, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(kl_lower_index(-0.1, 1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(kl_lower_index(0.5, -1.0, 1.0), std::invalid_argument);
}

TEST_CASE("subgaussian width: closed form and monotonicity") {
  // delta -> 1 sends log(1/delta) to 0: width tends to B + lambda sqrt(2).
  CHECK(subgaussian_width(1.0, 0.5, 0.0, 1.0 - 1e-12) ==
        doctest::Approx(1.7071067811865475).epsilon(1e-9));
  const double w = subgaussian_width(1.0, 0.5, 0.0, 0.05);
  CHECK(w == doctest::Approx(1.0 + 0.5 * std::sqrt(2.0 * (1.0 + std::log(20.0))))
                 .epsilon(1e-12));
  CHECK(subgaussian_width(1.0, 0.5, 2.0, 0.05) > w);   // more gain, wider
  CHECK(subgaussian_width(1.0, 0.5, 0.0, 0.01) > w);   // stricter delta, wider
  CHECK(subgaussian_width(2.0, 0.5, 0.0, 0.05) == doctest::Approx(w + 1.0));

  CHECK_THROWS_AS(subgaussian_width(0.0, 0.5, 0.0, 0.05), std::invalid_argument);
  CHECK_THROWS_AS(subgaussian_width(1.0, 0.0, 0.0, 0.05), std::invalid_argument);
  CHECK_THROWS_AS(subgaussian_width(1.0, 0.5, -1.0, 0.05), std::invalid_argument);
  CHECK_THROWS_AS(subgaussian_width(1.0, 0.5, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("subgaussian interval: centered, scaled by the posterior sd") {
  const double mean = 0.5, var = 0.04;
  const auto ci = subgaussian_interval(mean, var, 0.0, 1.0, 0.5, 0.05);
  const double half = subgaussian_width(1.0, 0.5, 0.0, 0.05) * 0.2;
  CHECK(ci.lower == doctest::Approx(mean - half).epsilon(1e-14));
  CHECK(ci.upper == doctest::Approx(mean + half).epsilon(1e-14));
  CHECK(ci.width() == doctest::Approx(2.0 * half).epsilon(1e-14));
  CHECK(ci.contains(mean));
}

TEST_CASE("raw subgaussian interval may leave [0,1]; the clipped family may not") {
  const auto raw = subgaussian_interval(0.9, 0.25, 1.0, 1.0, 0.5, 0.05);
  CHECK(raw.upper > 1.0);
  CHECK(raw.lower < 0.0);
  const auto clip = subgaussian_interval(0.9, 0.25, 1.0, 1.0, 0.5, 0.05, true);
  CHECK(clip.lower == 0.0);
  CHECK(clip.upper == 1.0);
  // Clipping never widens and keeps containment of in-range values.
  CHECK(clip.width() <= raw.width());
  CHECK(clip.contains(0.9));
}

TEST_CASE("posterior overload matches the component form") {
  GpPosterior gp(KernelSpec::squared_exponential(0.5), 0.25);
  Xoshiro256pp rng(45);
  for (int s = 0; s < 15; ++s)
    gp.update(Point{rng.next_double()}, static_cast<double>(rng.next_below(2)));
  const Point x{0.4};
  const auto a = subgaussian_interval(gp, x, 1.5, 0.5, 0.1);
  const auto b = subgaussian_interval(gp.mean(x), gp.var(x), gp.info_gain(), 1.5,
                                      0.5, 0.1);
  CHECK(a.lower == b.lower);
  CHECK(a.upper == b.upper);
}

TEST_CASE("per-arm kl interval") {
  ArmStats stats(2);
  const KlThresholdParams params{1.0, 3.0, 0.05};
  // Unexplored arm: the vacuous interval, exactly.
  const auto vac = kl_interval(stats, 0, 5, params);
  CHECK(vac.lower == 0.0);
  CHECK(vac.upper == 1.0);

  for (int i = 0; i < 12; ++i) stats.update(0, i % 3 == 0 ? 1 : 0);
  const auto ci = kl_interval(stats, 0, 40, params);
  const double mean = *stats.empirical_mean(0);
  const double thr = kl_threshold(40, params);
  CHECK(ci.lower == kl_lower_index(mean, 12.0, thr));
  CHECK(ci.upper == kl_upper_index(mean, 12.0, thr));
  CHECK(ci.contains(mean));
  CHECK(ci.lower >= 0.0);
  CHECK(ci.upper <= 1.0);
}
