#pragma once

#include <cstdint>
#include <random>

namespace selpar {

// std::mt19937_64 (fully specified by the standard) with bounded draws by
// rejection, so streams replay identically on every platform. The standard
// distribution classes are avoided on purpose: their algorithms are unspecified.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  // Uniform in [0, n), n > 0.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    for (;;) {
      const std::uint64_t x = eng_();
      if (x < limit) return x % n;
    }
  }

  // Uniform in [lo, hi].
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  bool coin() { return below(2) == 1; }

 private:
  std::mt19937_64 eng_;
};

// Per-trial seed: SplitMix64 finalizer applied to base + index * golden ratio.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace selpar
