#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include "event.hpp"

namespace conekit {

/// SplitMix64. Small state, passes BigCrush, and the sequence for a given
/// seed is identical on every platform, which keeps sampled test data stable.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  uint64_t state_;
};

/// Stream seed for the index-th independent sub-stream of a master seed.
/// Sub-streams can be consumed in any order without affecting each other.
inline uint64_t derive_seed(uint64_t seed, uint64_t index) {
  return SplitMix64(seed + 0x9E3779B97F4A7C15ULL * (index + 1)).next();
}

/// Deterministic sampler for events, directions, and scalars.
class Sampler {
 public:
  explicit Sampler(uint64_t seed) : rng_(seed) {}

  uint64_t next_raw() { return rng_.next(); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(rng_.next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Standard normal via Box-Muller; one value per call, no caching.
  double normal() {
    double u = uniform01();
    while (u == 0.0) u = uniform01();
    const double v = uniform01();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
  }

  /// Event with all coordinates uniform in [-radius, radius].
  Event box_event(int dim, double radius) {
    Event e(dim);
    for (int i = 0; i < dim; ++i) e[i] = uniform(-radius, radius);
    return e;
  }

  /// Uniform point of the unit sphere in the spatial slice, via the
  /// rotation-invariant gaussian construction.
  Direction direction(int dim) {
    double sp[kMaxDimension - 1];
    const int spatial = dim - 1;
    while (true) {
      double norm_sq = 0.0;
      for (int i = 0; i < spatial; ++i) {
        sp[i] = normal();
        norm_sq += sp[i] * sp[i];
      }
      if (norm_sq > 1e-24) {
        return Direction::from_spatial({sp, static_cast<size_t>(spatial)});
      }
    }
  }

 private:
  SplitMix64 rng_;
};

}  // namespace conekit
