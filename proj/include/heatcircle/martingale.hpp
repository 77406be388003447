#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "heatcircle/circle_grid.hpp"
#include "heatcircle/errors.hpp"
#include "heatcircle/heat_explicit.hpp"

namespace heatcircle {

/// Largest supported number of refinement levels (level 0 holds 2^kappa * eta cells).
inline constexpr std::size_t kMaxKappa = 16;

/**
 * Phi_i: (base point j, sign path omega of length kappa - i) -> cell index
 *
 *   r = 2^{kappa-i} j + sum_k b_k 2^{kappa-i-k},  b_k = (omega_k + 1) / 2,
 *
 * so omega_1 is the most significant bit. A bijection onto
 * {0, ..., 2^{kappa-i} eta - 1}; the identity when i = kappa.
 */
class PathIndexer {
 public:
  PathIndexer(std::size_t eta, std::size_t kappa, std::size_t level)
      : eta_(eta), kappa_(kappa), level_(level) {
    if (eta_ == 0) throw DomainError("PathIndexer needs eta > 0");
    if (kappa_ > kMaxKappa) {
      throw KappaTooLarge("kappa " + std::to_string(kappa_) + " > " + std::to_string(kMaxKappa));
    }
    if (level_ > kappa_) {
      throw LevelRange("level " + std::to_string(level_) + " > kappa " + std::to_string(kappa_));
    }
  }

  std::size_t eta() const { return eta_; }
  std::size_t kappa() const { return kappa_; }
  std::size_t level() const { return level_; }
  std::size_t path_length() const { return kappa_ - level_; }
  std::size_t cells() const { return eta_ << path_length(); }

  std::size_t index(std::size_t j, std::span<const int> omega) const {
    if (omega.size() != path_length()) {
      throw LengthMismatch("sign path has length " + std::to_string(omega.size()) +
                           ", expected " + std::to_string(path_length()));
    }
    if (j >= eta_) {
      throw RangeError("base point " + std::to_string(j) + " not in [0, " +
                       std::to_string(eta_) + ")");
    }
    std::size_t r = j;
    for (int w : omega) {
      if (w != 1 && w != -1) throw RangeError("sign entries must be +1 or -1");
      r = 2 * r + static_cast<std::size_t>((w + 1) / 2);
    }
    return r;
  }

  std::pair<std::size_t, std::vector<int>> decode(std::size_t r) const {
    if (r >= cells()) {
      throw RangeError("cell " + std::to_string(r) + " not in [0, " + std::to_string(cells()) +
                       ")");
    }
    const std::size_t len = path_length();
    std::vector<int> omega(len);
    for (std::size_t k = 0; k < len; ++k) {
      omega[len - 1 - k] = ((r >> k) & 1U) != 0 ? 1 : -1;
    }
    return {r >> len, std::move(omega)};
  }

 private:
  std::size_t eta_;
  std::size_t kappa_;
  std::size_t level_;
};

/// Grid index reached from base point j along omega with +-2 steps.
inline std::size_t walk_endpoint(const CircleGrid& grid, std::size_t j, std::span<const int> omega) {
  std::int64_t x = static_cast<std::int64_t>(j);
  for (int w : omega) x += 2 * w;
  return grid.wrap(x);
}

/**
 * Field on the dyadic refinements of a unit-circle grid with eta points.
 * Level i (time i / nu) has 2^{kappa-i} eta cells of weight 1 / (2^{kappa-i} eta);
 * level kappa is the grid itself. Conditional expectations run from level i
 * to the coarser level i + 1.
 */
class DyadicField {
 public:
  DyadicField(std::size_t eta, std::size_t kappa) : eta_(eta), kappa_(kappa) {
    if (eta_ == 0) throw DomainError("DyadicField needs eta > 0");
    if (kappa_ > kMaxKappa) {
      throw KappaTooLarge("kappa " + std::to_string(kappa_) + " > " + std::to_string(kMaxKappa));
    }
    levels_.resize(kappa_ + 1);
    for (std::size_t i = 0; i <= kappa_; ++i) levels_[i].assign(eta_ << (kappa_ - i), 0.0);
  }

  std::size_t eta() const { return eta_; }
  std::size_t kappa() const { return kappa_; }

  std::span<const double> level(std::size_t i) const { return levels_.at(check(i)); }
  std::span<double> level(std::size_t i) { return levels_.at(check(i)); }

  double cell_weight(std::size_t i) const {
    return 1.0 / static_cast<double>(eta_ << (kappa_ - check(i)));
  }

  PathIndexer indexer(std::size_t i) const { return PathIndexer(eta_, kappa_, check(i)); }

 private:
  std::size_t check(std::size_t i) const {
    if (i > kappa_) {
      throw LevelRange("level " + std::to_string(i) + " > kappa " + std::to_string(kappa_));
    }
    return i;
  }

  std::size_t eta_;
  std::size_t kappa_;
  std::vector<std::vector<double>> levels_;
};

/**
 * Fills cell Phi_i(j, omega) of level i with F_i at the walk endpoint
 * j + 2 sum(omega). `path[i]` is the real field at step i of the 2r = 1
 * scheme on the unit grid, i = 0..kappa.
 */
inline DyadicField build_reverse_field(std::span<const GridFunction> path, std::size_t kappa) {
  if (kappa > kMaxKappa) {
    throw KappaTooLarge("kappa " + std::to_string(kappa) + " > " + std::to_string(kMaxKappa));
  }
  if (path.size() != kappa + 1) {
    throw LengthMismatch("need kappa + 1 = " + std::to_string(kappa + 1) + " time slices, got " +
                         std::to_string(path.size()));
  }
  const CircleGrid grid = path.front().grid();
  for (const auto& slice : path) {
    if (!(slice.grid() == grid)) throw GridMismatch("time slices on different grids");
    if (!slice.is_real()) throw DomainError("reverse field needs real values");
  }
  DyadicField d(grid.size(), kappa);
  for (std::size_t i = 0; i <= kappa; ++i) {
    const std::size_t len = kappa - i;
    auto cells = d.level(i);
    const auto& f = path[i];
    for (std::size_t r = 0; r < cells.size(); ++r) {
      // sum(omega) = 2 popcount(low bits) - len
      const auto ups = static_cast<std::int64_t>(
          std::popcount(static_cast<std::uint64_t>(r & ((std::size_t{1} << len) - 1))));
      const auto j = static_cast<std::int64_t>(r >> len);
      cells[r] = f.at(j + 2 * (2 * ups - static_cast<std::int64_t>(len))).real();
    }
  }
  return d;
}

/// Evolves f for kappa steps of the 2r = 1 scheme and builds the field.
inline DyadicField build_reverse_field(const GridFunction& f, std::size_t kappa) {
  if (kappa > kMaxKappa) {
    throw KappaTooLarge("kappa " + std::to_string(kappa) + " > " + std::to_string(kMaxKappa));
  }
  const SchemeParams p = SchemeParams::chain_coupled(f.grid());
  std::vector<GridFunction> path{f};
  for (std::size_t i = 0; i < kappa; ++i) path.push_back(heat_step(p, path.back()));
  return build_reverse_field(path, kappa);
}

/// Block average of level i onto the cells of level i + 1.
inline std::vector<double> conditional_expectation(std::span<const double> finer) {
  std::vector<double> out(finer.size() / 2);
  for (std::size_t r = 0; r < out.size(); ++r) out[r] = 0.5 * (finer[2 * r] + finer[2 * r + 1]);
  return out;
}

inline std::vector<double> conditional_expectation(const DyadicField& d, std::size_t from_level,
                                                   std::size_t to_level) {
  if (from_level >= d.kappa() || to_level != from_level + 1) {
    throw LevelRange("conditional expectation maps level i < kappa to i + 1; got " +
                     std::to_string(from_level) + " -> " + std::to_string(to_level) +
                     " with kappa " + std::to_string(d.kappa()));
  }
  return conditional_expectation(d.level(from_level));
}

struct LevelPairDeviation {
  std::size_t from_level = 0;  // finer
  std::size_t to_level = 0;    // coarser
  double max_dev = 0.0;
  std::size_t worst_cell = 0;  // index at to_level
};

struct MartingaleReport {
  double scale = 0.0;      // max |level 0|
  double tolerance = 0.0;  // 1e-12 * scale
  double max_dev = 0.0;
  std::vector<LevelPairDeviation> pairs;
  bool holds = true;
  /// Worst pair; meaningful when !holds.
  LevelPairDeviation worst;
  /// Base point and sign path of the worst cell at the coarse level.
  std::size_t worst_base = 0;
  std::vector<int> worst_path;
};

/**
 * For every j < i, averages level j up to level i through the intermediate
 * levels and compares with the stored level i.
 */
inline MartingaleReport martingale_check(const DyadicField& d) {
  MartingaleReport rep;
  for (double v : d.level(0)) rep.scale = std::max(rep.scale, std::abs(v));
  rep.tolerance = 1e-12 * rep.scale;
  for (std::size_t j = 0; j < d.kappa(); ++j) {
    std::vector<double> cur(d.level(j).begin(), d.level(j).end());
    for (std::size_t i = j + 1; i <= d.kappa(); ++i) {
      cur = conditional_expectation(cur);
      const auto stored = d.level(i);
      LevelPairDeviation p{j, i, 0.0, 0};
      for (std::size_t r = 0; r < cur.size(); ++r) {
        const double dev = std::abs(cur[r] - stored[r]);
        if (dev > p.max_dev) {
          p.max_dev = dev;
          p.worst_cell = r;
        }
      }
      rep.pairs.push_back(p);
      if (p.max_dev > rep.max_dev) {
        rep.max_dev = p.max_dev;
        rep.worst = p;
      }
    }
  }
  rep.holds = rep.max_dev <= rep.tolerance;
  auto [base, path] = d.indexer(rep.worst.to_level).decode(rep.worst.worst_cell);
  rep.worst_base = base;
  rep.worst_path = std::move(path);
  return rep;
}

/// Averages of the 2^kappa level-0 cells sharing each base point j; equals
/// F_kappa(j) = 2^{-kappa} sum_omega F_0(j + 2 sum omega).
inline std::vector<double> feynman_kac_readout(const DyadicField& d) {
  // uniform average over the 2^kappa paths of each base point, reduced pairwise
  std::vector<double> acc(d.level(0).begin(), d.level(0).end());
  for (std::size_t i = 0; i < d.kappa(); ++i) acc = conditional_expectation(acc);
  return acc;
}

/// Cell-weighted average of a level (the expectation under the level's measure).
inline double level_mean(const DyadicField& d, std::size_t i) {
  double acc = 0.0;
  for (double v : d.level(i)) acc += v;
  return acc * d.cell_weight(i);
}

}  // namespace heatcircle
