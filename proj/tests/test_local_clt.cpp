#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "heatcircle/local_clt.hpp"
#include "oracles.hpp"

using namespace heatcircle;

namespace {

/// (1 / (pi sqrt(n))) * integral over [-pi sqrt(n)/2, pi sqrt(n)/2] of
/// cos(j x / sqrt(n)) cos(x / sqrt(n))^n, by the trapezoidal rule.
double characteristic_mass(std::int64_t n, std::int64_t j) {
  const double rn = std::sqrt(static_cast<double>(n));
  const double a = -std::numbers::pi * rn / 2.0;
  const double b = -a;
  const int panels = 20000;
  const double dx = (b - a) / panels;
  double acc = 0.0;
  for (int i = 0; i <= panels; ++i) {
    const double x = a + dx * i;
    const double w = (i == 0 || i == panels) ? 0.5 : 1.0;
    acc += w * std::cos(static_cast<double>(j) * x / rn) * std::pow(std::cos(x / rn), n);
  }
  return acc * dx / (std::numbers::pi * rn);
}

}  // namespace

TEST(WalkLaw, Validation) {
  EXPECT_THROW(WalkLaw(4), DomainError);
  EXPECT_THROW(WalkLaw(0), DomainError);
  EXPECT_THROW(WalkLaw(3, 0.0), DomainError);
  EXPECT_DOUBLE_EQ(WalkLaw(9, 2.0).support_point(3), 2.0);
}

TEST(BinomialPointMass, SmallCases) {
  EXPECT_EQ(binomial_point_mass(WalkLaw(1), 1).value, 0.5);
  EXPECT_EQ(binomial_point_mass(WalkLaw(3), 1).value, 0.375);
  EXPECT_EQ(binomial_point_mass(WalkLaw(3), -3).value, 0.125);
  const auto even = binomial_point_mass(WalkLaw(3), 2);
  EXPECT_TRUE(even.parity_zero);
  EXPECT_EQ(even.value, 0.0);
  EXPECT_THROW(binomial_point_mass(WalkLaw(3), 5), OutOfSupport);
}

TEST(BinomialPointMass, RowSumsToOne) {
  for (std::int64_t n : {1, 3, 59, 61, 201, 2001}) {
    double s = 0.0;
    for (std::int64_t j = -n; j <= n; j += 2) s += binomial_point_mass(WalkLaw(n), j).value;
    EXPECT_NEAR(s, 1.0, 1e-12) << n;
  }
}

TEST(BinomialPointMass, AgreesWithLongDoubleProduct) {
  for (std::int64_t n : {61, 101, 999}) {
    for (std::int64_t j = -n; j <= n; j += 2 * (n / 7) + 2) {
      const long double exact = oracle::binomial_mass(n, (n + j) / 2);
      const double got = binomial_point_mass(WalkLaw(n), j).value;
      EXPECT_NEAR(got, static_cast<double>(exact), 1e-12 * static_cast<double>(exact) + 1e-300);
    }
  }
}

TEST(BinomialPointMass, CharacteristicFunctionCrossCheck) {
  for (std::int64_t n = 1; n <= 25; n += 2) {
    for (std::int64_t j = -n; j <= n; j += 2) {
      EXPECT_NEAR(characteristic_mass(n, j), binomial_point_mass(WalkLaw(n), j).value, 1e-8);
    }
  }
}

TEST(GaussianPointApprox, Values) {
  const double c = std::sqrt(2.0 / (3.0 * std::numbers::pi));
  EXPECT_NEAR(gaussian_point_approx(WalkLaw(3), 1), c * std::exp(-1.0 / 6.0), 1e-15);
  EXPECT_NEAR(gaussian_point_approx(WalkLaw(3), 1), 0.3899393114, 1e-10);
  EXPECT_NEAR(gaussian_point_approx(WalkLaw(3), 3), 0.1027868865, 1e-10);
  EXPECT_EQ(gaussian_point_approx(WalkLaw(7), -5), gaussian_point_approx(WalkLaw(7), 5));
}

TEST(CltErrorProfile, SmallestCase) {
  // |1/8 - g(3)| = 0.0222131 at j = 3 beats |3/8 - g(1)| = 0.0149393 at j = 1.
  const std::vector<std::int64_t> ns{3};
  const auto rows = clt_error_profile(ns);
  ASSERT_EQ(rows.size(), 1U);
  EXPECT_NEAR(rows[0].max_err, 0.0222131135, 1e-9);
  EXPECT_EQ(rows[0].argmax_j, 3);
  EXPECT_NEAR(rows[0].scaled_err, 0.0222131135 * std::pow(3.0, 1.5), 1e-8);
}

TEST(CltErrorProfile, FrozenScaledValues) {
  const std::vector<std::int64_t> ns{5, 11, 101, 1001};
  const auto rows = clt_error_profile(ns);
  EXPECT_NEAR(rows[0].scaled_err, 0.12495, 5e-5);
  EXPECT_NEAR(rows[1].scaled_err, 0.15670, 5e-5);
  EXPECT_NEAR(rows[2].scaled_err, 0.19435, 5e-5);
  EXPECT_NEAR(rows[3].scaled_err, 0.198949, 5e-6);
}

TEST(CltErrorProfile, BoundedAndDecreasing) {
  const auto ns = odd_range(3, 301);
  const auto rows = clt_error_profile(ns);
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_LE(rows[i].max_err, rows[i - 1].max_err);
  const std::vector<std::int64_t> probe{11, 101, 1001};
  const auto p = clt_error_profile(probe);
  EXPECT_LT(p[2].scaled_err / p[0].scaled_err, 2.0);
  EXPECT_THROW(clt_error_profile(std::vector<std::int64_t>{4}), DomainError);
}

TEST(CltErrorProfile, EmpiricalConstantRespectsCutoff) {
  const auto rows = clt_error_profile(odd_range(3, 21));
  EXPECT_EQ(empirical_clt_constant(rows, 3), rows[0].scaled_err);
  EXPECT_EQ(empirical_clt_constant(rows), rows.back().scaled_err);
}

TEST(HeatKernel, MassAndTruncation) {
  for (double t : {0.01, 0.05, 0.5}) {
    const KernelSpec k{t};
    EXPECT_NEAR(kernel_mass(k, 1.0 / 512.0), 1.0, 1e-12) << t;
    EXPECT_GE(k.effective_truncation(1.0 / 512.0), 12.0 * std::sqrt(t));
  }
  EXPECT_THROW(kernel_mass(KernelSpec{0.0}, 0.1), NonpositiveTime);
  EXPECT_THROW(kernel_mass(KernelSpec{-1.0}, 0.1), NonpositiveTime);
}

TEST(HeatKernelConvolution, ConstantIsPreserved) {
  const CircleGrid g = CircleGrid::unit(128);
  const auto out = heat_kernel_convolution(GridFunction::constant(g, 3.0), KernelSpec{0.02});
  for (double v : out.real_part()) EXPECT_NEAR(v, 3.0, 3e-12);
}

TEST(HeatKernelConvolution, SingleModeDecay) {
  const CircleGrid g = CircleGrid::unit(512);
  const double t = 0.05;
  const double two_pi = 2.0 * std::numbers::pi;
  const auto f = GridFunction::sample(g, [&](double x) { return std::cos(two_pi * x); });
  const auto out = heat_kernel_convolution(f, KernelSpec{t});
  auto expected = f;
  expected *= std::exp(-two_pi * two_pi * t);
  EXPECT_LE(max_abs_diff(out, expected), 1e-3 * expected.max_abs());
}

TEST(HeatKernelConvolution, WalkSublatticeSpec) {
  const auto a = KernelSpec::walk_sublattice(0.1, 7);
  EXPECT_EQ(a.stride, 4);
  EXPECT_EQ(a.offset, 2);
  EXPECT_EQ(KernelSpec::walk_sublattice(0.1, 8).offset, 0);
  // Sublattice sums still carry unit mass.
  EXPECT_NEAR(kernel_mass(a, 1.0 / 512.0), 1.0, 1e-12);
}
