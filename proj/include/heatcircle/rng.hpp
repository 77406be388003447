#pragma once

#include <cstdint>

namespace heatcircle {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/**
 * Counter-based generator. Draw number c of stream s under seed k is
 *
 *   mix64(mix64(k ^ mix64(s)) + c * 0x9e3779b97f4a7c15)
 *
 * so any draw can be recomputed from (seed, stream, counter) alone. Work
 * split over streams therefore gives identical results for any number of
 * workers.
 */
class CounterRng {
 public:
  constexpr CounterRng(std::uint64_t seed, std::uint64_t stream)
      : key_(mix64(seed ^ mix64(stream))) {}

  static constexpr std::uint64_t draw(std::uint64_t seed, std::uint64_t stream,
                                      std::uint64_t counter) {
    return mix64(mix64(seed ^ mix64(stream)) + counter * 0x9e3779b97f4a7c15ULL);
  }

  constexpr std::uint64_t next() { return mix64(key_ + counter_++ * 0x9e3779b97f4a7c15ULL); }

  /// Uniform double in [0, 1) from the top 53 bits.
  constexpr double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  constexpr std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace heatcircle
