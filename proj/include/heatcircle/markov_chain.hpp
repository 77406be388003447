#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <span>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "heatcircle/errors.hpp"
#include "heatcircle/rng.hpp"

namespace heatcircle {

/**
 * Cyclic chain on N states that moves i -> i + 2 or i -> i - 2 (mod N),
 * each with probability 1/2, and never holds.
 *
 * For odd N the chain is irreducible and aperiodic with uniform stationary
 * law. For even N it preserves index parity, so p_{0,1}^(n) = 0 for all n.
 */
class ChainSpec {
 public:
  explicit ChainSpec(std::size_t num_states) : n_(num_states) {
    if (n_ == 0) throw DomainError("ChainSpec needs at least one state");
  }

  std::size_t num_states() const { return n_; }
  bool is_odd() const { return n_ % 2 == 1; }

  std::size_t up(std::size_t i) const { return (i + 2) % n_; }
  std::size_t down(std::size_t i) const { return (i + n_ - (2 % n_)) % n_; }

  void require_odd(const char* op) const {
    if (!is_odd()) {
      throw EvenStateCount(std::string(op) + " requires an odd number of states, got " +
                           std::to_string(n_));
    }
  }

 private:
  std::size_t n_;
};

enum class DistributionKind { probability, signed_measure };

/// Weights over the chain states. Probability kind is nonnegative with
/// unit mass; signed kind is any real vector with K = K+ - K-.
class Distribution {
 public:
  static constexpr double kMassTolerance = 1e-12;

  static Distribution probability(std::vector<double> w) {
    double total = 0.0;
    for (double x : w) {
      if (!(x >= 0.0)) throw DomainError("probability weights must be nonnegative");
      total += x;
    }
    if (std::abs(total - 1.0) > kMassTolerance) {
      throw DomainError("probability weights sum to " + std::to_string(total) + ", not 1");
    }
    return Distribution(std::move(w), DistributionKind::probability);
  }

  static Distribution signed_measure(std::vector<double> w) {
    return Distribution(std::move(w), DistributionKind::signed_measure);
  }

  static Distribution uniform(std::size_t n) {
    return Distribution(std::vector<double>(n, 1.0 / static_cast<double>(n)),
                        DistributionKind::probability);
  }

  static Distribution delta(std::size_t n, std::size_t state) {
    if (state >= n) {
      throw RangeError("delta state " + std::to_string(state) + " >= " + std::to_string(n));
    }
    std::vector<double> w(n, 0.0);
    w[state] = 1.0;
    return Distribution(std::move(w), DistributionKind::probability);
  }

  std::span<const double> weights() const { return w_; }
  std::size_t size() const { return w_.size(); }
  double operator[](std::size_t i) const { return w_[i]; }
  DistributionKind kind() const { return kind_; }

  /// K+ (sum of positive parts).
  double positive_mass() const {
    double s = 0.0;
    for (double x : w_) s += std::max(x, 0.0);
    return s;
  }
  /// K- (sum of magnitudes of negative parts).
  double negative_mass() const {
    double s = 0.0;
    for (double x : w_) s += std::max(-x, 0.0);
    return s;
  }
  /// K = K+ - K-.
  double mass() const { return std::accumulate(w_.begin(), w_.end(), 0.0); }

 private:
  friend Distribution step(const ChainSpec&, const Distribution&);

  Distribution(std::vector<double> w, DistributionKind kind) : w_(std::move(w)), kind_(kind) {}

  std::vector<double> w_;
  DistributionKind kind_;
};

/// One application of the transition operator: d'_j = (d_{j-2} + d_{j+2}) / 2.
/// Keeps the kind of the input.
inline Distribution step(const ChainSpec& chain, const Distribution& d) {
  const std::size_t n = chain.num_states();
  if (d.size() != n) {
    throw LengthMismatch("distribution has " + std::to_string(d.size()) + " weights, chain has " +
                         std::to_string(n) + " states");
  }
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    out[j] = 0.5 * d[chain.down(j)] + 0.5 * d[chain.up(j)];
  }
  return Distribution(std::move(out), d.kind());
}

inline Distribution evolve(const ChainSpec& chain, Distribution d, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) d = step(chain, d);
  return d;
}

/// Dense row-major square matrix, just enough for transition powers.
class SquareMatrix {
 public:
  explicit SquareMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}

  static SquareMatrix identity(std::size_t n) {
    SquareMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t size() const { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  std::span<const double> row(std::size_t i) const { return {a_.data() + i * n_, n_}; }

  friend SquareMatrix operator*(const SquareMatrix& x, const SquareMatrix& y) {
    const std::size_t n = x.n_;
    SquareMatrix z(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        const double xik = x(i, k);
        if (xik == 0.0) continue;
        for (std::size_t j = 0; j < n; ++j) z(i, j) += xik * y(k, j);
      }
    }
    return z;
  }

 private:
  std::size_t n_;
  std::vector<double> a_;
};

inline SquareMatrix transition_matrix(const ChainSpec& chain) {
  const std::size_t n = chain.num_states();
  SquareMatrix p(n);
  for (std::size_t i = 0; i < n; ++i) {
    p(i, chain.up(i)) += 0.5;
    p(i, chain.down(i)) += 0.5;
  }
  return p;
}

/// P^n by repeated squaring; entry (i, j) is p_ij^(n).
inline SquareMatrix n_step_matrix(const ChainSpec& chain, std::size_t n) {
  SquareMatrix result = SquareMatrix::identity(chain.num_states());
  SquareMatrix base = transition_matrix(chain);
  while (n > 0) {
    if (n & 1U) result = result * base;
    n >>= 1U;
    if (n > 0) base = base * base;
  }
  return result;
}

/// max_{i,j} |p_ij - 1/N|
inline double max_deviation_from_uniform(const SquareMatrix& p) {
  const double target = 1.0 / static_cast<double>(p.size());
  double m = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (double x : p.row(i)) m = std::max(m, std::abs(x - target));
  }
  return m;
}

/**
 * Mixing bound eps_n = ((4^N - 1) / 4^N)^(n / 2N - 1) for the odd-N chain,
 * from the minorization p_ij^(2N) >= 4^-N. Evaluated as
 * exp((n / 2N - 1) * log1p(-4^-N)) so that large N does not overflow.
 */
inline double epsilon_bound(std::size_t num_states, std::size_t n) {
  if (num_states % 2 == 0) {
    throw EvenStateCount("epsilon_bound requires odd N, got " + std::to_string(num_states));
  }
  if (num_states < 3) throw DomainError("epsilon_bound requires N >= 3");
  const double N = static_cast<double>(num_states);
  const double rho = std::exp(-N * std::log(4.0));
  const double exponent = static_cast<double>(n) / (2.0 * N) - 1.0;
  return std::exp(exponent * std::log1p(-rho));
}

/**
 * Natural log of the equilibrium time threshold 16 * 4^N * log(N) / N (in
 * time units) after which the field is within an infinitesimal of its mean.
 */
inline double log_equilibrium_time_bound(std::size_t num_states) {
  if (num_states % 2 == 0) {
    throw EvenStateCount("equilibrium_time_bound requires odd N, got " +
                         std::to_string(num_states));
  }
  if (num_states < 3) throw DomainError("equilibrium_time_bound requires N >= 3");
  const double N = static_cast<double>(num_states);
  return std::log(16.0) + N * std::log(4.0) + std::log(std::log(N)) - std::log(N);
}

/// 16 * 4^N * log(N) / N; +inf once it leaves the double range (N > ~510).
inline double equilibrium_time_bound(std::size_t num_states) {
  return std::exp(log_equilibrium_time_bound(num_states));
}

/// Total variation distance 1/2 sum_j |d_j - 1/N|.
inline double tv_distance_to_uniform(const ChainSpec& chain, const Distribution& d) {
  if (d.kind() != DistributionKind::probability) {
    throw DomainError("tv_distance_to_uniform needs a probability distribution");
  }
  if (d.size() != chain.num_states()) {
    throw LengthMismatch("distribution and chain sizes differ");
  }
  const double target = 1.0 / static_cast<double>(chain.num_states());
  double s = 0.0;
  for (double x : d.weights()) s += std::abs(x - target);
  return 0.5 * s;
}

struct CouplingOptions {
  std::size_t n_max = 0;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  /// Number of threads; results do not depend on it.
  std::size_t workers = 1;
};

/**
 * Monte Carlo coupling of two independent copies: X starts at `start_state`,
 * Y starts from a draw of `y_init` (the stationary law in the classical
 * argument). T = inf{n >= 1 : X_n = Y_n}. Returns survival[n] = P^(T > n)
 * for n = 0..n_max.
 *
 * Trial t uses stream t of the counter generator: draw 0 places Y_0, draw
 * n (n >= 1) supplies the moves of step n (bit 0 for X, bit 1 for Y).
 */
inline std::vector<double> coupling_simulate(const ChainSpec& chain, std::size_t start_state,
                                             const Distribution& y_init,
                                             const CouplingOptions& opt) {
  chain.require_odd("coupling_simulate");
  if (opt.trials == 0) throw DomainError("coupling_simulate needs at least one trial");
  if (y_init.size() != chain.num_states()) {
    throw LengthMismatch("coupling initial distribution size differs from chain");
  }
  if (start_state >= chain.num_states()) throw RangeError("start state outside chain");

  std::vector<double> cdf(y_init.size());
  {
    double acc = 0.0;
    for (std::size_t i = 0; i < cdf.size(); ++i) {
      acc += y_init[i];
      cdf[i] = acc;
    }
  }

  // coupled_at[t] = T for trial t, or n_max + 1 when the copies never met.
  std::vector<std::size_t> meet(opt.trials);
  auto run_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) {
      CounterRng rng(opt.seed, t);
      const double u = rng.uniform() * cdf.back();
      std::size_t y = static_cast<std::size_t>(
          std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
      y = std::min(y, cdf.size() - 1);
      std::size_t x = start_state;
      std::size_t hit = opt.n_max + 1;
      for (std::size_t n = 1; n <= opt.n_max; ++n) {
        const std::uint64_t bits = rng.next();
        x = (bits & 1U) ? chain.up(x) : chain.down(x);
        y = (bits & 2U) ? chain.up(y) : chain.down(y);
        if (x == y) {
          hit = n;
          break;
        }
      }
      meet[t] = hit;
    }
  };

  const std::size_t workers = std::clamp<std::size_t>(opt.workers, 1, opt.trials);
  if (workers == 1) {
    run_range(0, opt.trials);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (opt.trials + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t b = w * chunk;
      const std::size_t e = std::min(opt.trials, b + chunk);
      if (b < e) pool.emplace_back(run_range, b, e);
    }
  }

  // Survival counts from a histogram of meeting times.
  std::vector<std::size_t> hits(opt.n_max + 2, 0);
  for (std::size_t m : meet) ++hits[m];
  std::vector<double> survival(opt.n_max + 1);
  std::size_t alive = opt.trials;
  for (std::size_t n = 0; n <= opt.n_max; ++n) {
    alive -= hits[n];
    survival[n] = static_cast<double>(alive) / static_cast<double>(opt.trials);
  }
  return survival;
}

}  // namespace heatcircle
