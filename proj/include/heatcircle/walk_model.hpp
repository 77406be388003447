#pragma once

#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "heatcircle/binomial.hpp"
#include "heatcircle/circle_grid.hpp"
#include "heatcircle/errors.hpp"

namespace heatcircle {

/**
 * Independent walkers on a CircleGrid. A walker started at x_i moves by
 * +-2 lattice sites per time step; after `step` coin flips s it sits at
 * x_i + 2 (s_1 + ... + s_step) spacings. The particle density N_f assigns
 * each source point mass f(x_i) split evenly over the 2^step sign paths.
 */
class WalkEnsemble {
 public:
  /// Sign-sequence enumeration is limited to 2^24 paths.
  static constexpr std::size_t kEnumerationLimit = 24;

  WalkEnsemble(GridFunction init, std::size_t kappa) : init_(std::move(init)), kappa_(kappa) {
    for (std::size_t i = 0; i < init_.size(); ++i) {
      if (init_[i].imag() != 0.0 || !(init_[i].real() >= 0.0)) {
        throw NegativeInitial("walk densities need real f >= 0; value at index " +
                              std::to_string(i) + " is (" + std::to_string(init_[i].real()) +
                              ", " + std::to_string(init_[i].imag()) + ")");
      }
    }
  }

  const GridFunction& init() const { return init_; }
  const CircleGrid& grid() const { return init_.grid(); }
  std::size_t kappa() const { return kappa_; }

 private:
  GridFunction init_;
  std::size_t kappa_;
};

/// Lattice displacement 2 (2k - step) of a walker with k up-steps.
inline std::int64_t walk_displacement(std::size_t step, std::size_t ups) {
  return 2 * (2 * static_cast<std::int64_t>(ups) - static_cast<std::int64_t>(step));
}

namespace detail {

/// Folds per-displacement walker weights (indexed by number of up-steps)
/// onto the grid and convolves with the initial condition.
inline GridFunction fold_and_spread(const WalkEnsemble& w, std::size_t step,
                                    const std::vector<double>& weight_by_ups) {
  const CircleGrid& g = w.grid();
  std::vector<double> kernel(g.size(), 0.0);
  for (std::size_t k = 0; k <= step; ++k) {
    kernel[g.wrap(walk_displacement(step, k))] += weight_by_ups[k];
  }

  GridFunction out(g);
  const auto& f = w.init();
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double fi = f[i].real();
    if (fi == 0.0) continue;
    for (std::size_t d = 0; d < g.size(); ++d) {
      if (kernel[d] == 0.0) continue;
      out[g.wrap(static_cast<std::int64_t>(i + d))] += fi * kernel[d];
    }
  }
  return out;
}

}  // namespace detail

/**
 * N_f after `step` flips by brute force: enumerate all 2^step sign
 * sequences, count (exactly, as integers) how many land on each target, then
 * weight by f / 2^step.
 */
inline GridFunction density_enumerate(const WalkEnsemble& w, std::size_t step) {
  if (w.kappa() > WalkEnsemble::kEnumerationLimit) {
    throw KappaTooLarge("enumeration supports kappa <= " +
                        std::to_string(WalkEnsemble::kEnumerationLimit) + ", got " +
                        std::to_string(w.kappa()));
  }
  if (step > w.kappa()) {
    throw KappaTooLarge("step " + std::to_string(step) + " exceeds kappa " +
                        std::to_string(w.kappa()));
  }
  const CircleGrid& g = w.grid();
  const std::uint64_t paths = std::uint64_t{1} << step;

  // card[d]: number of sign sequences whose endpoint is displaced by d sites.
  std::vector<std::uint64_t> card(g.size(), 0);
  for (std::uint64_t s = 0; s < paths; ++s) {
    const auto ups = static_cast<std::int64_t>(std::popcount(s));
    const std::int64_t sum = 2 * ups - static_cast<std::int64_t>(step);
    ++card[g.wrap(2 * sum)];
  }

  const double inv_paths = std::ldexp(1.0, -static_cast<int>(step));
  GridFunction out(g);
  const auto& f = w.init();
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double fi = f[i].real();
    if (fi == 0.0) continue;
    for (std::size_t d = 0; d < g.size(); ++d) {
      if (card[d] == 0) continue;
      out[g.wrap(static_cast<std::int64_t>(i + d))] +=
          fi * inv_paths * static_cast<double>(card[d]);
    }
  }
  return out;
}

/// N_f after `step` flips from binomial weights C(step, k) / 2^step, folded
/// onto the grid in exact integer index arithmetic.
inline GridFunction density_binomial(const WalkEnsemble& w, std::size_t step) {
  return detail::fold_and_spread(w, step, binomial_row(step));
}

}  // namespace heatcircle
