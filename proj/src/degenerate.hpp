#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "event.hpp"
#include "minkowski.hpp"
#include "tolerance.hpp"

namespace conekit {

/// An open ball carrying a null direction and a bump amplitude.
struct Patch {
  Event center;
  double radius;
  Direction direction;
  double amplitude;
};

/// A map collapsing everything onto one light cone: inside patch j the image
/// moves along the patch direction, elsewhere it sits at the vertex.
struct DegenerateSpec {
  Event vertex;
  std::vector<Patch> patches;
};

/// Tent profile: 1 at the center, linear decay, 0 outside the open ball.
double bump(const Event& center, double radius, const Event& r);

Event eval(const DegenerateSpec& spec, const Event& r);

struct PairCheck {
  int j1;
  int j2;
  bool separated;  // interval criterion: no cross pair can be coherent
  bool disjoint;   // balls do not meet
};

struct WitnessPair {
  Event r1;
  Event r2;
  double q_value;
};

struct ValidationReport {
  bool valid = true;
  bool structure_ok = true;
  std::vector<PairCheck> pair_checks;
  std::optional<WitnessPair> witness;  // coherent cross-patch pair, when found
  int brute_force_pairs = 0;
  double brute_force_min_abs_q = 0.0;
  std::string message;
};

/// Checks the pairwise separation criterion and ball disjointness, then
/// confirms by seeded sampling that no cross-patch pair is coherent. Patch
/// shapes other than balls are out of scope for this validator.
ValidationReport validate_spec(const DegenerateSpec& spec, uint64_t seed = 1,
                               int brute_force_pairs = 10000, const Tolerance& tol = {});

/// Patches on the first spatial axis at unit spacing with common radius
/// epsilon. The interval criterion forces epsilon < 1/4.
DegenerateSpec build_default(int count, double epsilon, const Event& vertex, uint64_t seed);

}  // namespace conekit
