#pragma once

#include "event.hpp"

namespace conekit {

/// Relative tolerance policy for null-cone predicates. The quadratic form of
/// a difference vector grows like the square of its size, so the acceptance
/// band scales with 1 + the squared euclidean norm of the difference.
struct Tolerance {
  double tau_rel = 1e-9;

  double scale(const Event& diff) const { return tau_rel * (1.0 + diff.euclidean_norm_sq()); }

  /// Band used when deciding whether two events are distinct.
  double distinctness(const Event& a, const Event& b) const {
    return tau_rel * (1.0 + a.euclidean_norm() + b.euclidean_norm());
  }
};

}  // namespace conekit
