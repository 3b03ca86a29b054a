#pragma once

#include "event.hpp"
#include "tolerance.hpp"

namespace conekit {

/// Indefinite inner product of signature (1, n-1): time product minus the
/// euclidean product of the spatial parts.
inline double minkowski_inner(const Event& r1, const Event& r2) {
  require_same_dim(r1, r2);
  const int n = r1.dim();
  double spatial = 0.0;
  for (int i = 0; i < n - 1; ++i) spatial += r1[i] * r2[i];
  return r1[n - 1] * r2[n - 1] - spatial;
}

/// Quadratic form q(r) = inner(r, r).
inline double quadratic_form(const Event& r) { return minkowski_inner(r, r); }

/// Polar form of q, computed from the form itself. Agrees with
/// minkowski_inner up to rounding.
inline double polar(const Event& x, const Event& y) {
  require_same_dim(x, y);
  return 0.5 * (quadratic_form(x + y) - quadratic_form(x) - quadratic_form(y));
}

inline double eta(const Event& r) { return r.time(); }

/// Two events are coherent when their difference is null.
inline bool is_coherent(const Event& a, const Event& b, const Tolerance& tol = {}) {
  require_same_dim(a, b);
  const Event d = a - b;
  return std::abs(quadratic_form(d)) <= tol.scale(d);
}

/// Coherent and distinct.
inline bool is_adjacent(const Event& a, const Event& b, const Tolerance& tol = {}) {
  if (!is_coherent(a, b, tol)) return false;
  return (a - b).euclidean_norm() > tol.distinctness(a, b);
}

/// Projection of a cone point onto the section through the vertex a:
/// (m - a) scaled to time coordinate 1.
Direction project_to_section(const Event& a, const Event& m, const Tolerance& tol = {});

/// Whether a, b, c lie on one affine line, via the 2x2 minors of the
/// difference pair (b - a, c - a).
bool collinear(const Event& a, const Event& b, const Event& c, const Tolerance& tol = {});

/// A point coherent with both x and y and no farther from x than y is.
/// Total: defined for every pair, including x = y.
Event find_common_coherent(const Event& x, const Event& y);

/// For pairwise non-proportional null vectors a, b, c (n >= 4), a vector d
/// coherent with all three and itself non-null.
Event find_transversal_coherent(const Event& a, const Event& b, const Event& c,
                                const Tolerance& tol = {});

}  // namespace conekit
