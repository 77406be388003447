#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace heatcircle {

/// Largest n whose binomial row is computed from exact 64-bit integers.
inline constexpr std::size_t kExactBinomialLimit = 60;

/**
 * Row k -> C(n, k) / 2^n, k = 0..n.
 *
 * Exact integer coefficients up to n = 60 (C(60, 30) < 2^63), scaled by an
 * exact power of two. Beyond that, each entry comes from log-gamma in long
 * double, which keeps relative error near 1e-14 for n in the tens of
 * thousands.
 */
inline std::vector<double> binomial_row(std::size_t n) {
  std::vector<double> w(n + 1);
  if (n <= kExactBinomialLimit) {
    std::uint64_t c = 1;
    for (std::size_t k = 0; k <= n; ++k) {
      w[k] = std::ldexp(static_cast<double>(c), -static_cast<int>(n));
      // C(n, k) (n - k) stays below 4e18 for n <= 60; the division is exact.
      if (k < n) c = c * (n - k) / (k + 1);
    }
    return w;
  }
  const long double nn = static_cast<long double>(n);
  const long double log_norm = std::lgamma(nn + 1.0L) - nn * std::log(2.0L);
  for (std::size_t k = 0; k <= n; ++k) {
    const long double kk = static_cast<long double>(k);
    w[k] = static_cast<double>(
        std::exp(log_norm - std::lgamma(kk + 1.0L) - std::lgamma(nn - kk + 1.0L)));
  }
  return w;
}

}  // namespace heatcircle
