#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "heatcircle/circle_grid.hpp"
#include "heatcircle/errors.hpp"
#include "heatcircle/heat_explicit.hpp"

namespace heatcircle {

/// Contiguous block of Fourier modes first, first + 1, ..., first + count - 1.
struct ModeRange {
  std::int64_t first = 0;
  std::size_t count = 0;

  std::int64_t last() const { return first + static_cast<std::int64_t>(count) - 1; }
  bool contains(std::int64_t m) const { return m >= first && m <= last(); }
  std::size_t index(std::int64_t m) const { return static_cast<std::size_t>(m - first); }
  std::int64_t mode(std::size_t idx) const { return first + static_cast<std::int64_t>(idx); }
};

/// The n modes resolved by an n-point grid: {-n/2, ..., n/2 - 1} for even n
/// (the set Z_eta when n = 2 eta), {-(n-1)/2, ..., (n-1)/2} for odd n.
inline ModeRange grid_modes(const CircleGrid& g) {
  return {-static_cast<std::int64_t>(g.size() / 2), g.size()};
}

/**
 * Fourier coefficients of a GridFunction,
 *
 *   c(m) = (1 / 2 pi) * sum_i f(x_i) exp(-i k_m x_i) * spacing,  k_m = 2 pi m / L,
 *
 * i.e. (1 / 2 pi) times the counting-measure integral; on [-pi, pi) this is
 * the usual normalization and inversion is f(x) = sum_m c(m) exp(i m x).
 */
class Spectrum {
 public:
  Spectrum(CircleGrid grid, ModeRange modes, std::vector<Complex> coeffs)
      : grid_(grid), modes_(modes), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != modes_.count) throw LengthMismatch("Spectrum coefficient count");
  }

  static Spectrum zeros(CircleGrid grid) {
    const ModeRange modes = grid_modes(grid);
    return Spectrum(grid, modes, std::vector<Complex>(modes.count));
  }

  const CircleGrid& grid() const { return grid_; }
  const ModeRange& modes() const { return modes_; }
  std::span<const Complex> coeffs() const { return coeffs_; }
  std::span<Complex> coeffs() { return coeffs_; }

  Complex coeff(std::int64_t m) const {
    if (!modes_.contains(m)) throw RangeError("mode " + std::to_string(m) + " not in spectrum");
    return coeffs_[modes_.index(m)];
  }
  Complex& coeff(std::int64_t m) {
    if (!modes_.contains(m)) throw RangeError("mode " + std::to_string(m) + " not in spectrum");
    return coeffs_[modes_.index(m)];
  }

 private:
  CircleGrid grid_;
  ModeRange modes_;
  std::vector<Complex> coeffs_;
};

namespace detail {

/// exp(sign * 2 pi i q / n) for q = 0..n-1.
inline std::vector<Complex> roots_of_unity(std::size_t n, int sign) {
  std::vector<Complex> w(n);
  for (std::size_t q = 0; q < n; ++q) {
    const double angle = sign * 2.0 * std::numbers::pi * static_cast<double>(q) /
                         static_cast<double>(n);
    w[q] = std::polar(1.0, angle);
  }
  return w;
}

inline Complex ipow(Complex base, std::size_t e) {
  Complex result{1.0, 0.0};
  while (e > 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e > 0) base *= base;
  }
  return result;
}

}  // namespace detail

/// Direct O(n^2) transform over the grid's own mode range.
inline Spectrum fourier_coeffs(const GridFunction& f) {
  const CircleGrid& g = f.grid();
  const std::size_t n = g.size();
  const ModeRange modes = grid_modes(g);
  const auto w = detail::roots_of_unity(n, -1);
  const double norm = g.spacing() / (2.0 * std::numbers::pi);
  std::vector<Complex> c(n);
  for (std::size_t idx = 0; idx < n; ++idx) {
    const std::int64_t m = modes.mode(idx);
    const std::size_t step = g.wrap(m);
    Complex acc{0.0, 0.0};
    std::size_t q = 0;
    for (std::size_t i = 0; i < n; ++i) {
      acc += f[i] * w[q];
      q += step;
      if (q >= n) q -= n;
    }
    const Complex origin_phase = std::polar(1.0, -wavenumber(g, m) * g.origin());
    c[idx] = norm * origin_phase * acc;
  }
  return Spectrum(g, modes, std::move(c));
}

/// f(x_i) = (2 pi / L) sum_m c(m) exp(i k_m x_i), sampled on `target` (the
/// spectrum's own grid by default).
inline GridFunction inverse(const Spectrum& s, std::optional<CircleGrid> target = std::nullopt) {
  const CircleGrid g = target.value_or(s.grid());
  if (g.circumference() != s.grid().circumference()) {
    throw GridMismatch("inverse: target grid has a different circumference");
  }
  const double scale = 2.0 * std::numbers::pi / g.circumference();
  GridFunction out(g);
  const bool same_grid = g == s.grid();
  const auto w = detail::roots_of_unity(g.size(), +1);
  for (std::size_t idx = 0; idx < s.modes().count; ++idx) {
    const Complex c = s.coeffs()[idx];
    if (c == Complex{0.0, 0.0}) continue;
    const std::int64_t m = s.modes().mode(idx);
    const double k = wavenumber(g, m);
    const Complex base = scale * c * std::polar(1.0, k * g.origin());
    if (same_grid) {
      const std::size_t step = g.wrap(m);
      std::size_t q = 0;
      for (std::size_t i = 0; i < g.size(); ++i) {
        out[i] += base * w[q];
        q += step;
        if (q >= g.size()) q -= g.size();
      }
    } else {
      for (std::size_t i = 0; i < g.size(); ++i) {
        out[i] += base * std::polar(1.0, k * g.spacing() * static_cast<double>(i));
      }
    }
  }
  return out;
}

/// phi(m) = (1 / 2h)(exp(-i k_m h) - exp(i k_m h)) = -(i / h) sin(k_m h):
/// the discrete derivative maps exp(-i k_m x) to phi(m) exp(-i k_m x).
inline Complex phi_multiplier(const CircleGrid& g, std::int64_t m) {
  const double h = g.spacing();
  const double kh = wavenumber(g, m) * h;
  return (std::polar(1.0, -kh) - std::polar(1.0, kh)) / (2.0 * h);
}

/// psi(m) = (1 / 2h)(1 - exp(2 i k_m h)), h the full-grid spacing.
inline Complex psi_multiplier(const CircleGrid& g, std::int64_t m) {
  const double h = g.spacing();
  return (1.0 - std::polar(1.0, 2.0 * wavenumber(g, m) * h)) / (2.0 * h);
}

/// U(m) = exp(-2 i k_m h).
inline Complex u_multiplier(const CircleGrid& g, std::int64_t m) {
  return std::polar(1.0, -2.0 * wavenumber(g, m) * g.spacing());
}

/// theta(m) = psi(m)^2 U(m) = -sin^2(k_m h) / h^2; tends to -k_m^2 as h -> 0.
inline Complex theta_multiplier(const CircleGrid& g, std::int64_t m) {
  const Complex p = psi_multiplier(g, m);
  return p * p * u_multiplier(g, m);
}

/**
 * Derivative multipliers of a full grid. phi is tabulated over the full
 * mode range; psi, U and theta over the restricted range of the half grid.
 */
struct Multipliers {
  ModeRange full;
  ModeRange restricted;
  std::vector<Complex> phi;
  std::vector<Complex> psi;
  std::vector<Complex> u;
  std::vector<Complex> theta;

  Complex phi_at(std::int64_t m) const { return phi.at(full.index(m)); }
  Complex psi_at(std::int64_t m) const { return psi.at(restricted.index(m)); }
  Complex u_at(std::int64_t m) const { return u.at(restricted.index(m)); }
  Complex theta_at(std::int64_t m) const { return theta.at(restricted.index(m)); }
};

inline Multipliers multipliers(const CircleGrid& g) {
  const CircleGrid half = g.half();  // throws OddGridError
  Multipliers mul;
  mul.full = grid_modes(g);
  mul.restricted = grid_modes(half);
  for (std::size_t i = 0; i < mul.full.count; ++i) {
    mul.phi.push_back(phi_multiplier(g, mul.full.mode(i)));
  }
  for (std::size_t i = 0; i < mul.restricted.count; ++i) {
    const std::int64_t m = mul.restricted.mode(i);
    mul.psi.push_back(psi_multiplier(g, m));
    mul.u.push_back(u_multiplier(g, m));
    mul.theta.push_back(theta_multiplier(g, m));
  }
  return mul;
}

/// Coefficients of the restriction of f to its even-indexed points.
inline Spectrum restricted_coeffs(const GridFunction& f) { return fourier_coeffs(restrict(f)); }

/// max_m |(restrict f'')^(m) - psi(m)^2 U(m) (restrict f)^(m)| over the
/// restricted modes.
inline double restricted_second_derivative_identity_check(const GridFunction& f) {
  const CircleGrid& g = f.grid();
  if (!g.is_even()) throw OddGridError("restricted identity needs an even grid");
  const Spectrum lhs = restricted_coeffs(second_derivative(f));
  const Spectrum rhs = restricted_coeffs(f);
  double dev = 0.0;
  for (std::size_t i = 0; i < lhs.modes().count; ++i) {
    const std::int64_t m = lhs.modes().mode(i);
    const Complex p = psi_multiplier(g, m);
    dev = std::max(dev, std::abs(lhs.coeffs()[i] - p * p * u_multiplier(g, m) * rhs.coeffs()[i]));
  }
  return dev;
}

/// max_m |(f'')^(m) - phi(m)^2 f^(m)| over the full modes.
inline double second_derivative_identity_check(const GridFunction& f) {
  const Spectrum lhs = fourier_coeffs(second_derivative(f));
  const Spectrum rhs = fourier_coeffs(f);
  double dev = 0.0;
  for (std::size_t i = 0; i < lhs.modes().count; ++i) {
    const Complex p = phi_multiplier(f.grid(), lhs.modes().mode(i));
    dev = std::max(dev, std::abs(lhs.coeffs()[i] - p * p * rhs.coeffs()[i]));
  }
  return dev;
}

namespace detail {

/// Values f_{2i + parity} as a function on the half grid shifted by parity * h.
inline GridFunction sublattice(const GridFunction& f, std::size_t parity) {
  const CircleGrid& g = f.grid();
  const CircleGrid half(g.size() / 2, g.circumference(),
                        g.origin() + static_cast<double>(parity) * g.spacing());
  GridFunction out(half);
  for (std::size_t i = 0; i < half.size(); ++i) out[i] = f[2 * i + parity];
  return out;
}

}  // namespace detail

/**
 * Heat propagation mode by mode: each coefficient is multiplied by
 * (1 + theta(m) / nu)^steps. On even grids the +-2 stencil acts separately on
 * the even and odd sublattices, so each is transformed on the half grid
 * (theta from psi and U). Odd grids use the full grid with phi(m)^2, which
 * is the same symbol. Matches heat_explicit::evolve to roundoff.
 */
inline GridFunction spectral_propagate(const GridFunction& f, double nu, std::size_t steps) {
  const SchemeParams params(f.grid(), nu);
  params.require_stable();
  const CircleGrid& g = f.grid();
  if (!g.is_even()) {
    Spectrum s = fourier_coeffs(f);
    for (std::size_t i = 0; i < s.modes().count; ++i) {
      const Complex p = phi_multiplier(g, s.modes().mode(i));
      s.coeffs()[i] *= detail::ipow(1.0 + p * p / nu, steps);
    }
    return inverse(s);
  }
  GridFunction out(g);
  for (std::size_t parity = 0; parity < 2; ++parity) {
    Spectrum s = fourier_coeffs(detail::sublattice(f, parity));
    for (std::size_t i = 0; i < s.modes().count; ++i) {
      s.coeffs()[i] *= detail::ipow(1.0 + theta_multiplier(g, s.modes().mode(i)) / nu, steps);
    }
    const GridFunction part = inverse(s);
    for (std::size_t i = 0; i < part.size(); ++i) out[2 * i + parity] = part[i];
  }
  return out;
}

struct DecayRow {
  std::int64_t mode = 0;
  double coeff_abs = 0.0;
  double bound = 0.0;
  bool ok = true;
};

struct DecayReport {
  /// Bound on |(restrict f'')^(m)|: (L / 2 pi) max |restrict f''| unless supplied.
  double second_derivative_bound = 0.0;
  /// F = G pi^2 / 4.
  double constant = 0.0;
  std::vector<DecayRow> rows;
  bool holds = true;
};

/**
 * Checks |(restrict f)^(m)| <= F / k_m^2 for every nonzero restricted mode,
 * with F = G pi^2 / 4 (k_m = m on [-pi, pi)). G is computed from the discrete
 * second derivative unless the caller supplies a bound (e.g. the sup of the
 * continuum g'' whose samples f holds).
 */
inline DecayReport decay_check(const GridFunction& f,
                               std::optional<double> second_derivative_bound = std::nullopt) {
  const CircleGrid& g = f.grid();
  if (!g.is_even()) throw OddGridError("decay_check needs an even grid");
  DecayReport rep;
  rep.second_derivative_bound =
      second_derivative_bound.value_or(restrict(second_derivative(f)).max_abs() *
                                       g.circumference() / (2.0 * std::numbers::pi));
  rep.constant = rep.second_derivative_bound * std::numbers::pi * std::numbers::pi / 4.0;
  const Spectrum s = restricted_coeffs(f);
  // Roundoff allowance relative to the size of the data.
  const double slack = 1e-12 * std::max(1.0, f.max_abs());
  for (std::size_t i = 0; i < s.modes().count; ++i) {
    const std::int64_t m = s.modes().mode(i);
    if (m == 0) continue;
    const double k = wavenumber(g, m);
    DecayRow row{m, std::abs(s.coeffs()[i]), rep.constant / (k * k), true};
    row.ok = row.coeff_abs <= row.bound + slack;
    rep.holds = rep.holds && row.ok;
    rep.rows.push_back(row);
  }
  return rep;
}

/// Smallest wavenumber magnitude cut-off with exp(-k^2 t) < 1e-16.
inline double classical_cutoff(double t) { return std::ceil(std::sqrt(37.0 / t)); }

/**
 * Classical Fourier-series heat solution
 *
 *   G(x, t) = (2 pi / L) sum_m exp(-k_m^2 t) c(m) exp(i k_m x),
 *
 * truncated to |k_m| <= ceil(sqrt(37 / t)) for t > 0 and sampled on `target`
 * (the spectrum's grid by default). t = 0 re-sums the input unchanged.
 */
inline GridFunction classical_solution(const Spectrum& g_coeffs, double t,
                                       std::optional<CircleGrid> target = std::nullopt) {
  if (t < 0.0 || !std::isfinite(t)) throw DomainError("classical_solution needs t >= 0");
  Spectrum damped = g_coeffs;
  if (t > 0.0) {
    const double cutoff = classical_cutoff(t);
    for (std::size_t i = 0; i < damped.modes().count; ++i) {
      const double k = wavenumber(damped.grid(), damped.modes().mode(i));
      damped.coeffs()[i] = std::abs(k) <= cutoff ? damped.coeffs()[i] * std::exp(-k * k * t)
                                                 : Complex{0.0, 0.0};
    }
  }
  return inverse(damped, target);
}

struct EquilibriumReport {
  /// integral(f) / L
  double mean = 0.0;
  /// max_x |F(x) - mean| after the requested steps.
  double deviation = 0.0;
  /// Per-sublattice mean offset plus sum_{m != 0} |1 + theta/nu|^steps |c(m)| (2 pi / L).
  double predicted_bound = 0.0;
};

/// Distance to the mean after `steps` spectral steps, with the bound
/// predicted from the nonzero modes.
inline EquilibriumReport equilibrium_check(const GridFunction& f, double nu, std::size_t steps) {
  const CircleGrid& g = f.grid();
  if (!g.is_even()) throw OddGridError("equilibrium_check needs an even grid");
  EquilibriumReport rep;
  rep.mean = (integral(f) / g.circumference()).real();
  const GridFunction evolved = spectral_propagate(f, nu, steps);
  for (std::size_t i = 0; i < evolved.size(); ++i) {
    rep.deviation = std::max(rep.deviation, std::abs(evolved[i] - rep.mean));
  }
  const double scale = 2.0 * std::numbers::pi / g.circumference();
  for (std::size_t parity = 0; parity < 2; ++parity) {
    const Spectrum s = fourier_coeffs(detail::sublattice(f, parity));
    double bound = std::abs(scale * s.coeff(0) - rep.mean);
    for (std::size_t i = 0; i < s.modes().count; ++i) {
      const std::int64_t m = s.modes().mode(i);
      if (m == 0) continue;
      const double factor = std::abs(1.0 + theta_multiplier(g, m) / nu);
      bound += std::pow(factor, static_cast<double>(steps)) * std::abs(s.coeffs()[i]) * scale;
    }
    rep.predicted_bound = std::max(rep.predicted_bound, bound);
  }
  return rep;
}

}  // namespace heatcircle
