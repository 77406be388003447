#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "heatcircle/heat_explicit.hpp"
#include "heatcircle/spectral.hpp"
#include "oracles.hpp"

using namespace heatcircle;

namespace {

constexpr double kPi = std::numbers::pi;

double max_coeff_dev(const Spectrum& a, const Spectrum& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.modes().count; ++i) {
    d = std::max(d, std::abs(a.coeffs()[i] - b.coeffs()[i]));
  }
  return d;
}

}  // namespace

TEST(ModeRange, GridModes) {
  const auto even = grid_modes(CircleGrid::periodic(16));
  EXPECT_EQ(even.first, -8);
  EXPECT_EQ(even.last(), 7);
  const auto odd = grid_modes(CircleGrid::periodic(9));
  EXPECT_EQ(odd.first, -4);
  EXPECT_EQ(odd.last(), 4);
}

TEST(FourierCoeffs, ConstantFunction) {
  const auto s = fourier_coeffs(GridFunction::constant(CircleGrid::periodic(16), 1.0));
  EXPECT_NEAR(std::abs(s.coeff(0) - 1.0), 0.0, 1e-14);
  for (std::int64_t m = -8; m < 8; ++m) {
    if (m != 0) EXPECT_LE(std::abs(s.coeff(m)), 1e-14);
  }
  const auto u = fourier_coeffs(GridFunction::constant(CircleGrid::unit(10), 1.0));
  EXPECT_NEAR(u.coeff(0).real(), 1.0 / (2.0 * kPi), 1e-15);
}

TEST(FourierCoeffs, SingleExponential) {
  const CircleGrid g = CircleGrid::periodic(32);
  const auto s = fourier_coeffs(exp_grid(g, 1));
  EXPECT_NEAR(std::abs(s.coeff(1) - 1.0), 0.0, 1e-13);
  for (std::int64_t m = -16; m < 16; ++m) {
    if (m != 1) EXPECT_LE(std::abs(s.coeff(m)), 1e-13);
  }
  EXPECT_THROW((void)s.coeff(16), RangeError);
}

TEST(FourierCoeffs, MatchesLongDoubleOracleAndIsLinear) {
  std::mt19937_64 rng(31);
  for (const CircleGrid& g : {CircleGrid::periodic(24), CircleGrid(15, 3.0, 0.7)}) {
    const auto f = oracle::random_complex(g, rng);
    const auto h = oracle::random_complex(g, rng);
    const auto sf = fourier_coeffs(f);
    const auto sh = fourier_coeffs(h);
    const auto sum = fourier_coeffs(f + 2.0 * h);
    for (std::size_t i = 0; i < sf.modes().count; ++i) {
      const std::int64_t m = sf.modes().mode(i);
      const auto o = oracle::dft_coeff(f, m);
      EXPECT_NEAR(sf.coeffs()[i].real(), static_cast<double>(o.real()), 1e-13);
      EXPECT_NEAR(sf.coeffs()[i].imag(), static_cast<double>(o.imag()), 1e-13);
      EXPECT_LE(std::abs(sum.coeffs()[i] - sf.coeffs()[i] - 2.0 * sh.coeffs()[i]), 1e-13);
    }
  }
}

TEST(Inverse, RoundTrip) {
  std::mt19937_64 rng(37);
  for (std::size_t n : {16U, 17U, 64U}) {
    for (int trial = 0; trial < 100; ++trial) {
      const auto f = oracle::random_complex(CircleGrid(n, 2.0 * kPi, -kPi), rng);
      EXPECT_LE(max_abs_diff(inverse(fourier_coeffs(f)), f), 1e-10);
    }
  }
  const CircleGrid u(12, 1.0, 0.0);
  const auto f = oracle::random_complex(u, rng);
  EXPECT_LE(max_abs_diff(inverse(fourier_coeffs(f)), f), 1e-12);
}

TEST(Inverse, ZeroAndSingleMode) {
  const CircleGrid g = CircleGrid::periodic(16);
  EXPECT_EQ(inverse(Spectrum::zeros(g)).max_abs(), 0.0);
  Spectrum s = Spectrum::zeros(g);
  s.coeff(3) = 1.0;
  EXPECT_LE(max_abs_diff(inverse(s), exp_grid(g, 3)), 1e-13);
  // sampling on a finer grid of the same circle
  const CircleGrid fine = CircleGrid::periodic(64);
  EXPECT_LE(max_abs_diff(inverse(s, fine), exp_grid(fine, 3)), 1e-13);
}

TEST(Multipliers, ClosedForms) {
  const CircleGrid g = CircleGrid::periodic(32);  // eta = 16
  const auto mul = multipliers(g);
  EXPECT_EQ(mul.phi_at(0), Complex(0.0, 0.0));
  EXPECT_EQ(mul.psi_at(0), Complex(0.0, 0.0));
  EXPECT_EQ(mul.u_at(0), Complex(1.0, 0.0));
  const double eta = 16.0;
  for (std::int64_t m = -16; m < 16; ++m) {
    const Complex expected = -Complex(0.0, eta / kPi) * std::sin(m * kPi / eta);
    EXPECT_LE(std::abs(mul.phi_at(m) - expected), 1e-13);
    // (eta / 2 pi)(e^{-i m pi / eta} - e^{i m pi / eta})
    const Complex literal =
        (eta / (2.0 * kPi)) * (std::polar(1.0, -m * kPi / eta) - std::polar(1.0, m * kPi / eta));
    EXPECT_LE(std::abs(mul.phi_at(m) - literal), 1e-13);
  }
  for (std::int64_t m = -8; m < 8; ++m) {
    EXPECT_NEAR(std::abs(mul.u_at(m)), 1.0, 1e-15);
    EXPECT_LE(std::abs(mul.theta_at(m) - mul.phi_at(m) * mul.phi_at(m)), 1e-12);
  }
  EXPECT_THROW(multipliers(CircleGrid::periodic(9)), OddGridError);
}

TEST(Multipliers, PsiBoundsExhaustive) {
  for (std::size_t eta = 8; eta <= 1024; eta *= 2) {
    const CircleGrid g = CircleGrid::periodic(2 * eta);
    const auto half = static_cast<std::int64_t>(eta / 2);
    for (std::int64_t m = -half; m <= half; ++m) {
      if (m == 0) continue;
      const double a = std::abs(psi_multiplier(g, m));
      const double am = std::abs(static_cast<double>(m));
      EXPECT_GE(a, 2.0 * am / kPi - 1e-12);
      EXPECT_LE(a, 4.0 * am / kPi + 1e-12);
      EXPECT_NEAR(std::abs(u_multiplier(g, m)), 1.0, 1e-15);
    }
  }
}

TEST(Multipliers, ThetaLimit) {
  const CircleGrid g = CircleGrid::periodic(2048);
  EXPECT_NEAR(theta_multiplier(g, 1).real(), -1.0, 1e-4);
  EXPECT_NEAR(theta_multiplier(g, 1).imag(), 0.0, 1e-12);
}

TEST(Identities, SecondDerivativeMultiplier) {
  std::mt19937_64 rng(41);
  for (std::size_t eta : {16U, 64U}) {
    const CircleGrid g = CircleGrid::periodic(2 * eta);
    for (int trial = 0; trial < 20; ++trial) {
      const auto f = oracle::random_complex(g, rng);
      EXPECT_LE(second_derivative_identity_check(f), 1e-10);
      EXPECT_LE(restricted_second_derivative_identity_check(f), 1e-10 * f.max_abs());
    }
  }
  EXPECT_LE(restricted_second_derivative_identity_check(
                GridFunction::constant(CircleGrid::periodic(32), 2.0)),
            1e-13);
  EXPECT_THROW(restricted_second_derivative_identity_check(GridFunction(CircleGrid::periodic(9))),
               OddGridError);
}

TEST(Identities, RestrictedSingleMode) {
  const CircleGrid g = CircleGrid::periodic(64);
  const auto e2 = exp_grid(g, 2);
  const auto lhs = restricted_coeffs(second_derivative(e2));
  const auto rhs = restricted_coeffs(e2);
  EXPECT_LE(std::abs(lhs.coeff(2) - theta_multiplier(g, 2) * rhs.coeff(2)), 1e-12);
  EXPECT_NEAR(std::abs(rhs.coeff(2)), 1.0, 1e-13);
}

TEST(SpectralPropagate, MatchesExplicitScheme) {
  std::mt19937_64 rng(43);
  for (std::size_t n : {128U, 127U}) {
    const CircleGrid g = CircleGrid::periodic(n);
    const auto f = oracle::random_real(g, rng);
    for (double two_r : {1.0, 0.7}) {
      const auto p = SchemeParams::with_ratio(g, two_r);
      const auto a = spectral_propagate(f, p.nu(), 1000);
      const auto b = evolve(p, f, 1000);
      EXPECT_LE(max_abs_diff(a, b), 1e-10) << n << ' ' << two_r;
    }
  }
}

TEST(SpectralPropagate, ZeroStepsAndMassConservation) {
  std::mt19937_64 rng(47);
  const CircleGrid g = CircleGrid::periodic(32);
  const auto f = oracle::random_real(g, rng);
  const auto p = SchemeParams::chain_coupled(g);
  EXPECT_LE(max_abs_diff(spectral_propagate(f, p.nu(), 0), f), 1e-13);
  const auto c0 = fourier_coeffs(f).coeff(0);
  for (std::size_t steps : {1U, 10U, 500U}) {
    EXPECT_LE(std::abs(fourier_coeffs(spectral_propagate(f, p.nu(), steps)).coeff(0) - c0), 1e-13);
  }
  EXPECT_THROW(spectral_propagate(f, p.nu() / 2.0, 1), UnstableParams);
}

TEST(DecayCheck, CosineAndSmoothData) {
  const CircleGrid g = CircleGrid::periodic(512);  // eta = 256
  const auto c = GridFunction::sample(g, [](double x) { return std::cos(x); });
  const auto rc = decay_check(c);
  EXPECT_TRUE(rc.holds);
  for (const auto& row : rc.rows) {
    if (std::abs(row.mode) >= 2) EXPECT_LE(row.coeff_abs, 1e-13);
  }
  const auto bump = GridFunction::sample(g, [](double x) {
    double s = 0.0;
    for (int k = 0; k <= 8; ++k) s += std::cos(k * x) / (1.0 + k * k) + 0.5 * std::sin(k * x) / (2.0 + k);
    return s;
  });
  EXPECT_TRUE(decay_check(bump).holds);
  EXPECT_THROW(decay_check(GridFunction(CircleGrid::periodic(9))), OddGridError);
}

TEST(DecayCheck, SawtoothNeedsTheSmoothnessHypothesis) {
  auto saw = [](double x) { return x; };  // jump at +-pi
  // The continuum second derivative vanishes away from the jump, so the
  // classical constant is G = 0 and the coefficient bound fails.
  const auto g128 = GridFunction::sample(CircleGrid::periodic(128), saw);
  const auto classical = decay_check(g128, 0.0);
  EXPECT_FALSE(classical.holds);
  // With G taken from the grid itself the bound holds, but G blows up
  // under refinement (roughly 4x per doubling).
  const auto d128 = decay_check(g128);
  const auto d256 = decay_check(GridFunction::sample(CircleGrid::periodic(256), saw));
  EXPECT_TRUE(d128.holds);
  EXPECT_GT(d256.second_derivative_bound / d128.second_derivative_bound, 3.5);
}

TEST(ClassicalSolution, SingleModeAndConstants) {
  const CircleGrid g = CircleGrid::periodic(64);
  const auto c = GridFunction::sample(g, [](double x) { return std::cos(x); });
  const auto s = fourier_coeffs(c);
  for (double t : {0.1, 1.0}) {
    auto expected = c;
    expected *= std::exp(-t);
    EXPECT_LE(max_abs_diff(classical_solution(s, t), expected), 1e-13);
  }
  EXPECT_LE(max_abs_diff(classical_solution(s, 0.0), c), 1e-13);
  const auto k = GridFunction::constant(g, 4.0);
  EXPECT_LE(max_abs_diff(classical_solution(fourier_coeffs(k), 3.0), k), 1e-13);
  EXPECT_THROW(classical_solution(s, -1.0), DomainError);
  EXPECT_EQ(classical_cutoff(37.0), 1.0);
}

TEST(Equilibrium, DeviationWithinPredictedBound) {
  const CircleGrid g = CircleGrid::periodic(64);
  const auto f = GridFunction::sample(g, [](double x) { return std::exp(std::sin(x)); });
  const auto p = SchemeParams::chain_coupled(g);
  for (std::size_t steps : {10U, 100U, 1000U}) {
    const auto rep = equilibrium_check(f, p.nu(), steps);
    EXPECT_LE(rep.deviation, rep.predicted_bound + 1e-13);
  }
  const auto late = equilibrium_check(f, p.nu(), 20000);
  EXPECT_LE(late.deviation, 1e-10);
}
