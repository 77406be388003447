#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "heatcircle/binomial.hpp"
#include "heatcircle/circle_grid.hpp"
#include "heatcircle/errors.hpp"

namespace heatcircle {

/**
 * Law of S_n = (X_1 + ... + X_n) / sqrt(n) for i.i.d. X_i = +-scale with
 * probability 1/2 each. With n odd, S_n lives on {scale * j / sqrt(n) :
 * j odd, |j| <= n}.
 */
class WalkLaw {
 public:
  explicit WalkLaw(std::int64_t n, double scale = 1.0) : n_(n), scale_(scale) {
    if (n_ <= 0 || n_ % 2 == 0) {
      throw DomainError("WalkLaw needs a positive odd number of summands, got " +
                        std::to_string(n_));
    }
    if (!(scale_ > 0.0)) throw DomainError("WalkLaw scale must be positive");
  }

  std::int64_t n() const { return n_; }
  double scale() const { return scale_; }

  /// Value of S_n at lattice label j.
  double support_point(std::int64_t j) const {
    return scale_ * static_cast<double>(j) / std::sqrt(static_cast<double>(n_));
  }

 private:
  std::int64_t n_;
  double scale_;
};

struct PointMass {
  double value = 0.0;
  /// Set when j has the wrong parity: the mass is identically zero there.
  bool parity_zero = false;
};

/// P(S_n = j / sqrt(n)) = C(n, (n + j) / 2) / 2^n for odd j, |j| <= n.
inline PointMass binomial_point_mass(const WalkLaw& law, std::int64_t j) {
  const std::int64_t n = law.n();
  if (j > n || j < -n) {
    throw OutOfSupport("|j| = " + std::to_string(j < 0 ? -j : j) + " exceeds n = " +
                       std::to_string(n));
  }
  if ((n + j) % 2 != 0) return {0.0, true};
  const auto k = static_cast<std::size_t>((n + j) / 2);
  const auto nn = static_cast<std::size_t>(n);
  if (nn <= kExactBinomialLimit) return {binomial_row(nn)[k], false};
  const long double ln = static_cast<long double>(nn);
  const long double lk = static_cast<long double>(k);
  const long double log_mass = std::lgamma(ln + 1.0L) - std::lgamma(lk + 1.0L) -
                               std::lgamma(ln - lk + 1.0L) - ln * std::log(2.0L);
  return {static_cast<double>(std::exp(log_mass)), false};
}

/// sqrt(2 / (pi n)) exp(-j^2 / 2n): the Gaussian density of S_n times the
/// lattice gap 2 / sqrt(n).
inline double gaussian_point_approx(const WalkLaw& law, std::int64_t j) {
  const double n = static_cast<double>(law.n());
  const double jj = static_cast<double>(j);
  return std::sqrt(2.0 / (std::numbers::pi * n)) * std::exp(-jj * jj / (2.0 * n));
}

struct CltErrorRow {
  std::int64_t n = 0;
  double max_err = 0.0;
  /// max_err * n^{3/2}
  double scaled_err = 0.0;
  /// max_err * n^{3/4}, recorded alongside the 3/2 scaling.
  double scaled_err_34 = 0.0;
  /// A maximizing lattice label (the positive one of a symmetric pair).
  std::int64_t argmax_j = 0;
};

/// Exhaustive scan over odd |j| <= n of |binomial - gaussian| for each n.
inline std::vector<CltErrorRow> clt_error_profile(std::span<const std::int64_t> n_list) {
  std::vector<CltErrorRow> rows;
  rows.reserve(n_list.size());
  for (std::int64_t n : n_list) {
    if (n < 3 || n % 2 == 0) {
      throw DomainError("clt_error_profile needs odd n >= 3, got " + std::to_string(n));
    }
    const WalkLaw law(n);
    const auto row = binomial_row(static_cast<std::size_t>(n));
    CltErrorRow r;
    r.n = n;
    for (std::int64_t j = 1; j <= n; j += 2) {
      const double mass = row[static_cast<std::size_t>((n + j) / 2)];
      const double err = std::abs(mass - gaussian_point_approx(law, j));
      if (err > r.max_err) {
        r.max_err = err;
        r.argmax_j = j;
      }
    }
    const double nd = static_cast<double>(n);
    r.scaled_err = r.max_err * std::pow(nd, 1.5);
    r.scaled_err_34 = r.max_err * std::pow(nd, 0.75);
    rows.push_back(r);
  }
  return rows;
}

/// Odd integers lo, lo + 2, ..., <= hi.
inline std::vector<std::int64_t> odd_range(std::int64_t lo, std::int64_t hi) {
  std::vector<std::int64_t> out;
  for (std::int64_t n = (lo % 2 == 0 ? lo + 1 : lo); n <= hi; n += 2) out.push_back(n);
  return out;
}

/// Empirical constant: max of scaled_err over the rows with n <= max_n.
inline double empirical_clt_constant(std::span<const CltErrorRow> rows,
                                     std::int64_t max_n = INT64_MAX) {
  double l = 0.0;
  for (const auto& r : rows) {
    if (r.n <= max_n) l = std::max(l, r.scaled_err);
  }
  return l;
}

/// Heat kernel (1 / (2 sqrt(pi t))) exp(-y^2 / 4t).
inline double heat_kernel(double t, double y) {
  return std::exp(-y * y / (4.0 * t)) / (2.0 * std::sqrt(std::numbers::pi * t));
}

/**
 * Sampled heat kernel on a sublattice of the grid: displacements
 * (offset + stride * i) grid points for integer i, truncated to
 * |displacement| <= truncation (in x units). Each sample carries weight
 * stride * spacing, the counting measure of the sublattice.
 */
struct KernelSpec {
  double t = 0.0;
  /// Half-width of the lattice sum; <= 0 selects the default.
  double truncation = 0.0;
  std::int64_t stride = 1;
  std::int64_t offset = 0;

  /// max(12 sqrt(t), 8 * stride * spacing): the Gaussian tail beyond
  /// 12 sqrt(t) has relative mass erfc(6) ~ 2e-17.
  double effective_truncation(double spacing) const {
    if (truncation > 0.0) return truncation;
    return std::max(12.0 * std::sqrt(t), 8.0 * static_cast<double>(stride) * spacing);
  }

  /// The displacements a +-2 walker can reach after `steps` steps:
  /// 2 (2k - steps) = 4k - 2 steps, i.e. stride 4 and offset 2 (steps mod 2).
  static KernelSpec walk_sublattice(double t, std::size_t steps) {
    return KernelSpec{t, 0.0, 4, static_cast<std::int64_t>(2 * (steps % 2))};
  }

  void validate() const {
    if (!(t > 0.0) || !std::isfinite(t)) throw NonpositiveTime("kernel time must be > 0");
    if (stride <= 0) throw DomainError("kernel stride must be positive");
  }
};

namespace detail {

/// Calls fn(displacement_in_grid_points, weight) for every sublattice sample.
template <typename Fn>
void for_each_kernel_sample(const KernelSpec& k, double spacing, Fn&& fn) {
  const double half_width = k.effective_truncation(spacing);
  const double lattice = static_cast<double>(k.stride) * spacing;
  const auto reach = static_cast<std::int64_t>(std::ceil(half_width / lattice)) + 1;
  for (std::int64_t i = -reach; i <= reach; ++i) {
    const std::int64_t d = k.offset + k.stride * i;
    const double y = static_cast<double>(d) * spacing;
    if (std::abs(y) > half_width) continue;
    fn(d, lattice * heat_kernel(k.t, y));
  }
}

}  // namespace detail

/// Riemann mass of the truncated sampled kernel (unperiodized).
inline double kernel_mass(const KernelSpec& k, double spacing) {
  k.validate();
  double mass = 0.0;
  detail::for_each_kernel_sample(k, spacing, [&](std::int64_t, double w) { mass += w; });
  return mass;
}

/**
 * Convolution of the periodic extension of f with the sampled heat kernel:
 *
 *   out(x_j) = sum_i w_i f_per(x_j + d_i spacing),  w_i = lattice * K_t(d_i spacing).
 *
 * The kernel is first folded onto the circle, so the cost is
 * O(samples + n^2).
 */
inline GridFunction heat_kernel_convolution(const GridFunction& f, const KernelSpec& k) {
  k.validate();
  const CircleGrid& g = f.grid();
  std::vector<double> folded(g.size(), 0.0);
  detail::for_each_kernel_sample(k, g.spacing(),
                                 [&](std::int64_t d, double w) { folded[g.wrap(d)] += w; });
  GridFunction out(g);
  for (std::size_t j = 0; j < g.size(); ++j) {
    Complex acc{0.0, 0.0};
    for (std::size_t d = 0; d < g.size(); ++d) {
      if (folded[d] != 0.0) acc += folded[d] * f.at(static_cast<std::int64_t>(j + d));
    }
    out[j] = acc;
  }
  return out;
}

}  // namespace heatcircle
