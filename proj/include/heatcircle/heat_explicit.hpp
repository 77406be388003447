#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "heatcircle/circle_grid.hpp"
#include "heatcircle/errors.hpp"

namespace heatcircle {

/**
 * Explicit scheme for F_t = F_xx on a CircleGrid with time step 1/nu:
 *
 *   F(x_i, t + 1/nu) = r F(x_{i+2}) + (1 - 2r) F(x_i) + r F(x_{i-2}),
 *   r = 1 / (4 spacing^2 nu).
 *
 * The stencil reaches +-2 because the second derivative is the central
 * difference applied twice. Stable (a convex combination) iff 2r <= 1; at
 * 2r = 1 the step is exactly the +-2 Markov chain acting on the values.
 */
class SchemeParams {
 public:
  /// Relative slack when deciding 2r <= 1 and when snapping 2r to exactly 1.
  static constexpr double kRatioTolerance = 1e-12;

  SchemeParams(CircleGrid grid, double nu) : grid_(grid), nu_(nu) {
    if (!(nu_ > 0.0) || !std::isfinite(nu_)) throw DomainError("SchemeParams requires nu > 0");
    const double h = grid_.spacing();
    r_ = 1.0 / (4.0 * h * h * nu_);
    if (std::abs(2.0 * r_ - 1.0) <= kRatioTolerance) r_ = 0.5;
  }

  /// nu = 1 / (2 spacing^2), i.e. 2r = 1: the pure +-2 chain.
  static SchemeParams chain_coupled(CircleGrid grid) {
    const double h = grid.spacing();
    return SchemeParams(grid, 1.0 / (2.0 * h * h));
  }

  /// nu giving the requested stability ratio 2r.
  static SchemeParams with_ratio(CircleGrid grid, double two_r) {
    if (!(two_r > 0.0)) throw DomainError("stability ratio must be positive");
    const double h = grid.spacing();
    return SchemeParams(grid, 1.0 / (2.0 * h * h * two_r));
  }

  const CircleGrid& grid() const { return grid_; }
  double nu() const { return nu_; }
  double r() const { return r_; }
  double stability_ratio() const { return 2.0 * r_; }
  bool is_stable() const { return 2.0 * r_ <= 1.0 + kRatioTolerance; }
  bool is_chain_coupled() const { return r_ == 0.5; }
  double time(std::size_t steps) const { return static_cast<double>(steps) / nu_; }

  void require_stable() const {
    if (!is_stable()) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "stability requires 2r <= 1 with r = 1/(4 h^2 nu); got 2r = " << 2.0 * r_
          << " (h = " << grid_.spacing() << ", nu = " << nu_
          << "); choose nu >= " << 1.0 / (2.0 * grid_.spacing() * grid_.spacing());
      throw UnstableParams(msg.str());
    }
  }

 private:
  CircleGrid grid_;
  double nu_;
  double r_;
};

inline GridFunction heat_step(const SchemeParams& p, const GridFunction& f) {
  p.require_stable();
  if (!(f.grid() == p.grid())) throw GridMismatch("heat_step: function not on the scheme grid");
  const double r = p.r();
  const double centre = 1.0 - 2.0 * r;
  GridFunction out(f.grid());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto k = static_cast<std::int64_t>(i);
    out[i] = r * f.at(k + 2) + centre * f[i] + r * f.at(k - 2);
  }
  return out;
}

inline GridFunction evolve(const SchemeParams& p, GridFunction f, std::size_t steps) {
  p.require_stable();
  if (!(f.grid() == p.grid())) throw GridMismatch("evolve: function not on the scheme grid");
  for (std::size_t s = 0; s < steps; ++s) f = heat_step(p, f);
  return f;
}

/// Per-step maxima of |F|, |F_x| and |F_xx|.
struct DerivativeMaxima {
  double field = 0.0;
  double first = 0.0;
  double second = 0.0;

  double overall() const { return std::max({field, first, second}); }
};

inline DerivativeMaxima derivative_maxima(const GridFunction& f) {
  return {f.max_abs(), discrete_derivative(f).max_abs(), second_derivative(f).max_abs()};
}

struct DerivativeBoundReport {
  static constexpr double kSlack = 1e-10;

  /// M0 = max{|f|, |f'|, |f''|} of the initial condition.
  double initial_bound = 0.0;
  /// trace[k] holds the maxima after k steps, k = 0..steps.
  std::vector<DerivativeMaxima> trace;
  bool holds = true;
  /// First step exceeding M0 + slack, or steps + 1 when none does.
  std::size_t first_violation = 0;
};

/// Evolves `steps` times and checks that the field and its first two
/// discrete derivatives never exceed their initial overall maximum.
inline DerivativeBoundReport derivative_bound_check(const SchemeParams& p, GridFunction f,
                                                    std::size_t steps) {
  p.require_stable();
  if (!(f.grid() == p.grid())) throw GridMismatch("derivative_bound_check: grid mismatch");
  DerivativeBoundReport rep;
  rep.trace.reserve(steps + 1);
  rep.trace.push_back(derivative_maxima(f));
  rep.initial_bound = rep.trace.front().overall();
  rep.first_violation = steps + 1;
  for (std::size_t s = 1; s <= steps; ++s) {
    f = heat_step(p, f);
    rep.trace.push_back(derivative_maxima(f));
    if (rep.holds && rep.trace.back().overall() > rep.initial_bound + DerivativeBoundReport::kSlack) {
      rep.holds = false;
      rep.first_violation = s;
    }
  }
  return rep;
}

/// True when an even grid carries nonzero values on both index parities;
/// the +-2 stencil never mixes the two sublattices.
inline bool has_parity_mixed_support(const GridFunction& f) {
  if (!f.grid().is_even()) return false;
  bool even = false;
  bool odd = false;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] != Complex{0.0, 0.0}) (i % 2 == 0 ? even : odd) = true;
  }
  return even && odd;
}

}  // namespace heatcircle
