#pragma once

#include <cstdint>
#include <cmath>
#include <optional>
#include <random>

#include "svbev/geometry.hpp"

namespace svbev {

/// Deterministic RNG: mt19937_64 engine with hand-derived uniform and normal
/// draws so sequences do not depend on library distribution internals.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  /// Independent stream for (seed, stream) pairs, e.g. one per frame.
  Rng(uint64_t seed, uint64_t stream) : engine_(mix(seed, stream)) {}

  uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1).
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Inclusive integer range.
  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(uniform01() * (static_cast<double>(hi - lo) + 1.0));
  }

  /// Box-Muller normal draw.
  double normal(double sigma) {
    if (cached_) {
      const double z = *cached_;
      cached_.reset();
      return sigma * z;
    }
    const double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    cached_ = r * std::sin(2.0 * kPi * u2);
    return sigma * r * std::cos(2.0 * kPi * u2);
  }

 private:
  static uint64_t mix(uint64_t seed, uint64_t stream) {
    // splitmix64 step over the combined value.
    uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::mt19937_64 engine_;
  std::optional<double> cached_;
};

}  // namespace svbev
