#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "heatcircle/heat_explicit.hpp"
#include "heatcircle/markov_chain.hpp"
#include "oracles.hpp"

using namespace heatcircle;

TEST(SchemeParams, RatioAndStability) {
  const CircleGrid g = CircleGrid::unit(10);  // h = 0.1
  const SchemeParams p(g, 50.0);                 // r = 1 / (4 * 0.01 * 50)
  EXPECT_DOUBLE_EQ(p.r(), 0.5);
  EXPECT_TRUE(p.is_chain_coupled());
  const SchemeParams q(g, 100.0);
  EXPECT_DOUBLE_EQ(q.stability_ratio(), 0.5);
  EXPECT_TRUE(q.is_stable());
  EXPECT_FALSE(q.is_chain_coupled());
  const SchemeParams bad(g, 40.0);
  EXPECT_FALSE(bad.is_stable());
  EXPECT_DOUBLE_EQ(SchemeParams::with_ratio(g, 0.8).stability_ratio(), 0.8);
  EXPECT_THROW(SchemeParams(g, 0.0), DomainError);
}

TEST(SchemeParams, ChainCouplingSnapsExactly) {
  for (std::size_t n : {5U, 64U, 101U, 512U}) {
    EXPECT_TRUE(SchemeParams::chain_coupled(CircleGrid::unit(n)).is_chain_coupled());
    EXPECT_TRUE(SchemeParams::chain_coupled(CircleGrid::periodic(n)).is_chain_coupled());
  }
}

TEST(HeatStep, UnstableIsRefusedWithDiagnostic) {
  const CircleGrid g = CircleGrid::unit(10);
  const SchemeParams bad(g, 40.0);
  try {
    (void)heat_step(bad, GridFunction::constant(g, 1.0));
    FAIL() << "expected UnstableParams";
  } catch (const UnstableParams& e) {
    EXPECT_NE(std::string(e.what()).find("2r <= 1"), std::string::npos);
  }
}

TEST(HeatStep, ConstantIsFixed) {
  const CircleGrid g = CircleGrid::unit(12);
  const auto f = GridFunction::constant(g, 2.5);
  const auto out = evolve(SchemeParams::with_ratio(g, 0.7), f, 25);
  EXPECT_LE(max_abs_diff(out, f), 1e-14);
}

TEST(HeatStep, HandStencil) {
  const CircleGrid g = CircleGrid::unit(6);
  GridFunction f(g);
  f[0] = 1.0;
  const SchemeParams p = SchemeParams::with_ratio(g, 0.5);  // r = 1/4
  const auto out = heat_step(p, f);
  EXPECT_DOUBLE_EQ(out[0].real(), 0.5);
  EXPECT_DOUBLE_EQ(out[2].real(), 0.25);
  EXPECT_DOUBLE_EQ(out[4].real(), 0.25);
  EXPECT_DOUBLE_EQ(out[1].real(), 0.0);
}

TEST(HeatStep, GridMismatch) {
  const SchemeParams p = SchemeParams::chain_coupled(CircleGrid::unit(8));
  EXPECT_THROW(heat_step(p, GridFunction(CircleGrid::unit(9))), GridMismatch);
}

TEST(HeatStep, ChainCouplingEqualsWalkAverage) {
  std::mt19937_64 rng(4);
  for (std::size_t n : {5U, 8U, 11U}) {
    const CircleGrid g = CircleGrid::unit(n);
    const auto f = oracle::random_real(g, rng);
    for (std::size_t steps : {1U, 3U, 9U}) {
      const auto evolved = evolve(SchemeParams::chain_coupled(g), f, steps);
      EXPECT_LE(max_abs_diff(evolved, oracle::walk_average(f, steps)), 1e-14);
    }
  }
}

TEST(HeatStep, ChainCouplingEqualsMarkovStep) {
  std::mt19937_64 rng(8);
  const CircleGrid g = CircleGrid::unit(9);
  const auto f = oracle::random_real(g, rng, 0.0, 1.0);
  auto d = Distribution::signed_measure(f.real_part());
  GridFunction F = f;
  const auto p = SchemeParams::chain_coupled(g);
  for (int s = 0; s < 200; ++s) {
    d = step(ChainSpec(9), d);
    F = heat_step(p, F);
  }
  EXPECT_LE(max_abs_diff(F, GridFunction::from_real(g, d.weights())), 1e-14);
}

TEST(HeatStep, MaximumPrinciple) {
  std::mt19937_64 rng(12);
  const CircleGrid g = CircleGrid::unit(31);
  const auto f = oracle::random_real(g, rng);
  double lo = 1e300;
  double hi = -1e300;
  for (double v : f.real_part()) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  auto F = f;
  const auto p = SchemeParams::with_ratio(g, 0.9);
  for (int s = 0; s < 100; ++s) {
    F = heat_step(p, F);
    for (double v : F.real_part()) {
      EXPECT_GE(v, lo - 1e-14);
      EXPECT_LE(v, hi + 1e-14);
    }
  }
}

TEST(DerivativeBound, HoldsForSmoothData) {
  const CircleGrid g = CircleGrid::periodic(64);
  const auto f = GridFunction::sample(g, [](double x) { return std::sin(x) + 0.3 * std::cos(2 * x); });
  const auto rep = derivative_bound_check(SchemeParams::chain_coupled(g), f, 200);
  EXPECT_TRUE(rep.holds);
  EXPECT_EQ(rep.trace.size(), 201U);
  EXPECT_EQ(rep.first_violation, 201U);
  EXPECT_NEAR(rep.initial_bound, rep.trace[0].overall(), 0.0);
}

TEST(DerivativeBound, ParityMixedSupportFlag) {
  const CircleGrid g = CircleGrid::unit(8);
  GridFunction f(g);
  f[0] = 1.0;
  EXPECT_FALSE(has_parity_mixed_support(f));
  f[3] = 1.0;
  EXPECT_TRUE(has_parity_mixed_support(f));
  EXPECT_FALSE(has_parity_mixed_support(GridFunction::constant(CircleGrid::unit(7), 1.0)));
}

TEST(Evolve, FourierModeDecaysAtSchemeRate) {
  // cos(k x) is an eigenvector: multiplier 1 - 4 r sin^2(k h).
  const CircleGrid g = CircleGrid::periodic(32);
  const auto f = GridFunction::sample(g, [](double x) { return std::cos(3 * x); });
  const auto p = SchemeParams::with_ratio(g, 0.6);
  const double h = g.spacing();
  const double lam = 1.0 - 4.0 * p.r() * std::pow(std::sin(3.0 * h), 2);
  const auto out = evolve(p, f, 40);
  auto expected = f;
  expected *= std::pow(lam, 40);
  EXPECT_LE(max_abs_diff(out, expected), 1e-13);
}
