#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "heatcircle/errors.hpp"

namespace heatcircle {

using Complex = std::complex<double>;

/**
 * Discrete circle: n_pts equally spaced points origin + i * spacing,
 * 0 <= i < n_pts, with wraparound. Carries the counting measure that gives
 * each point weight `spacing`, so the total mass is the circumference.
 *
 * Two conventions are in use throughout the library:
 *  - unit circle [0, 1), origin 0 (Markov and random-walk experiments);
 *  - periodic interval [-pi, pi), origin -pi (Fourier experiments).
 * They differ only by the rescale x -> x / pi.
 */
class CircleGrid {
 public:
  static constexpr std::size_t kMinPoints = 3;

  CircleGrid(std::size_t n_pts, double circumference = 1.0, double origin = 0.0)
      : n_pts_(n_pts), circumference_(circumference), origin_(origin) {
    if (n_pts_ < kMinPoints) {
      throw DomainError("CircleGrid needs at least " + std::to_string(kMinPoints) +
                        " points, got " + std::to_string(n_pts_));
    }
    if (!(circumference_ > 0.0) || !std::isfinite(circumference_)) {
      throw DomainError("CircleGrid circumference must be positive and finite");
    }
    if (!std::isfinite(origin_)) {
      throw DomainError("CircleGrid origin must be finite");
    }
  }

  static CircleGrid unit(std::size_t n_pts) { return CircleGrid(n_pts, 1.0, 0.0); }

  /// [-pi, pi) with n_pts points.
  static CircleGrid periodic(std::size_t n_pts) {
    return CircleGrid(n_pts, 2.0 * std::numbers::pi, -std::numbers::pi);
  }

  std::size_t size() const { return n_pts_; }
  double circumference() const { return circumference_; }
  double origin() const { return origin_; }
  double spacing() const { return circumference_ / static_cast<double>(n_pts_); }

  /// Reduces any integer index into [0, n_pts).
  std::size_t wrap(std::int64_t i) const {
    const auto n = static_cast<std::int64_t>(n_pts_);
    std::int64_t r = i % n;
    if (r < 0) r += n;
    return static_cast<std::size_t>(r);
  }

  double point(std::int64_t i) const {
    return origin_ + static_cast<double>(wrap(i)) * spacing();
  }

  bool is_even() const { return n_pts_ % 2 == 0; }

  /// Grid of the even-indexed points (same circumference and origin).
  CircleGrid half() const {
    if (!is_even()) {
      throw OddGridError("restriction needs an even point count, got " +
                         std::to_string(n_pts_));
    }
    return CircleGrid(n_pts_ / 2, circumference_, origin_);
  }

  friend bool operator==(const CircleGrid&, const CircleGrid&) = default;

 private:
  std::size_t n_pts_;
  double circumference_;
  double origin_;
};

/// Time lattice j / nu, j = 0..horizon_steps.
class TimeGrid {
 public:
  TimeGrid(double nu, std::size_t horizon_steps) : nu_(nu), horizon_steps_(horizon_steps) {
    if (!(nu_ > 0.0) || !std::isfinite(nu_)) {
      throw DomainError("TimeGrid requires nu > 0");
    }
  }

  double nu() const { return nu_; }
  std::size_t horizon_steps() const { return horizon_steps_; }
  double time(std::size_t step) const { return static_cast<double>(step) / nu_; }

  /// floor(nu * t), the step index containing time t.
  std::size_t step_at(double t) const {
    if (t < 0.0) throw DomainError("TimeGrid::step_at requires t >= 0");
    return static_cast<std::size_t>(std::floor(nu_ * t));
  }

 private:
  double nu_;
  std::size_t horizon_steps_;
};

/// Complex-valued function on a CircleGrid.
class GridFunction {
 public:
  explicit GridFunction(CircleGrid grid) : grid_(grid), values_(grid.size()) {}

  GridFunction(CircleGrid grid, std::vector<Complex> values)
      : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size()) {
      throw LengthMismatch("GridFunction has " + std::to_string(values_.size()) +
                           " values for a grid of " + std::to_string(grid_.size()) + " points");
    }
  }

  static GridFunction from_real(CircleGrid grid, std::span<const double> values) {
    std::vector<Complex> v(values.begin(), values.end());
    return GridFunction(grid, std::move(v));
  }

  static GridFunction constant(CircleGrid grid, Complex c) {
    return GridFunction(grid, std::vector<Complex>(grid.size(), c));
  }

  /// Samples fn(x) at every grid point; fn may return double or Complex.
  template <typename Fn>
  static GridFunction sample(CircleGrid grid, Fn&& fn) {
    std::vector<Complex> v(grid.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      v[i] = Complex(fn(grid.point(static_cast<std::int64_t>(i))));
    }
    return GridFunction(grid, std::move(v));
  }

  const CircleGrid& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  std::span<const Complex> values() const { return values_; }
  std::span<Complex> values() { return values_; }

  const Complex& operator[](std::size_t i) const { return values_[i]; }
  Complex& operator[](std::size_t i) { return values_[i]; }

  /// Access with the index reduced mod n_pts.
  const Complex& at(std::int64_t i) const { return values_[grid_.wrap(i)]; }

  double max_abs() const {
    double m = 0.0;
    for (const auto& v : values_) m = std::max(m, std::abs(v));
    return m;
  }

  std::vector<double> real_part() const {
    std::vector<double> out(values_.size());
    std::transform(values_.begin(), values_.end(), out.begin(),
                   [](const Complex& v) { return v.real(); });
    return out;
  }

  bool is_real(double tol = 0.0) const {
    return std::all_of(values_.begin(), values_.end(),
                       [tol](const Complex& v) { return std::abs(v.imag()) <= tol; });
  }

  GridFunction& operator+=(const GridFunction& o) {
    require_same_grid(o, "+=");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
    return *this;
  }
  GridFunction& operator-=(const GridFunction& o) {
    require_same_grid(o, "-=");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
    return *this;
  }
  GridFunction& operator*=(Complex s) {
    for (auto& v : values_) v *= s;
    return *this;
  }

  friend GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
  friend GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
  friend GridFunction operator*(GridFunction a, Complex s) { return a *= s; }
  friend GridFunction operator*(Complex s, GridFunction a) { return a *= s; }

  /// Pointwise product.
  friend GridFunction operator*(const GridFunction& a, const GridFunction& b) {
    a.require_same_grid(b, "*");
    GridFunction out(a.grid_);
    for (std::size_t i = 0; i < a.size(); ++i) out.values_[i] = a.values_[i] * b.values_[i];
    return out;
  }

  void require_same_grid(const GridFunction& o, const char* op) const {
    if (!(grid_ == o.grid_)) {
      throw GridMismatch(std::string("operands of ") + op + " live on different grids");
    }
  }

 private:
  CircleGrid grid_;
  std::vector<Complex> values_;
};

/// max_i |a_i - b_i|
inline double max_abs_diff(const GridFunction& a, const GridFunction& b) {
  a.require_same_grid(b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

/// Central difference with wraparound: (f_{i+1} - f_{i-1}) / (2 * spacing).
inline GridFunction discrete_derivative(const GridFunction& f) {
  const auto& g = f.grid();
  const double scale = 1.0 / (2.0 * g.spacing());
  GridFunction out(g);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto k = static_cast<std::int64_t>(i);
    out[i] = (f.at(k + 1) - f.at(k - 1)) * scale;
  }
  return out;
}

/// (f_{i+2} - 2 f_i + f_{i-2}) / (2 * spacing)^2; the derivative applied twice.
inline GridFunction second_derivative(const GridFunction& f) {
  const auto& g = f.grid();
  const double h2 = 2.0 * g.spacing();
  const double scale = 1.0 / (h2 * h2);
  GridFunction out(g);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto k = static_cast<std::int64_t>(i);
    out[i] = (f.at(k + 2) - 2.0 * f[i] + f.at(k - 2)) * scale;
  }
  return out;
}

enum class ShiftDirection { left, right };

/// left: g_j = f_{j+1};  right: g_j = f_{j-1}.
inline GridFunction shift(const GridFunction& f, ShiftDirection dir, std::size_t times = 1) {
  const auto offset = static_cast<std::int64_t>(times) * (dir == ShiftDirection::left ? 1 : -1);
  GridFunction out(f.grid());
  for (std::size_t i = 0; i < f.size(); ++i) {
    out[i] = f.at(static_cast<std::int64_t>(i) + offset);
  }
  return out;
}

/// Samples the even-indexed points onto the half grid.
inline GridFunction restrict(const GridFunction& f) {
  const CircleGrid half = f.grid().half();
  GridFunction out(half);
  for (std::size_t i = 0; i < half.size(); ++i) out[i] = f[2 * i];
  return out;
}

/// Counting-measure integral: spacing * sum of values.
inline Complex integral(const GridFunction& f) {
  Complex s{0.0, 0.0};
  for (const auto& v : f.values()) s += v;
  return s * f.grid().spacing();
}

/// Angular wavenumber of Fourier mode m: 2 pi m / circumference (equals m on [-pi, pi)).
inline double wavenumber(const CircleGrid& grid, std::int64_t mode) {
  return 2.0 * std::numbers::pi * static_cast<double>(mode) / grid.circumference();
}

/// Samples exp(i k_m x) with k_m the wavenumber of mode m.
inline GridFunction exp_grid(const CircleGrid& grid, std::int64_t mode) {
  const double k = wavenumber(grid, mode);
  return GridFunction::sample(grid, [k](double x) { return std::polar(1.0, k * x); });
}

}  // namespace heatcircle
