#pragma once

#include <cstdint>
#include <random>

namespace tcoq {

/// SplitMix64 mixing step. Used to decorrelate per-run seeds derived from a
/// common base seed, so that run i and run i+1 do not share engine state.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed for the i-th run of a batch.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  return base ^ splitmix64(index);
}

/// Deterministic random source. Wraps mt19937_64 and maps raw bits to
/// doubles directly instead of going through std::uniform_real_distribution,
/// whose output sequence is implementation defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }

  /// Uniform double in [0, 1), 53 bits of precision.
  double uniform01() { return static_cast<double>(bits() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Unbiased uniform integer in [0, n). Requires n > 0.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % n;
    std::uint64_t v = bits();
    while (v >= limit) v = bits();
    return v % n;
  }

  /// Fair coin as a spin value, -1 or +1.
  int spin() { return (bits() & 1) ? 1 : -1; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace tcoq
