#pragma once

#include <array>
#include <cmath>
#include <initializer_list>
#include <span>
#include <string>

#include "errors.hpp"

namespace conekit {

inline constexpr int kMinDimension = 3;
inline constexpr int kMaxDimension = 6;

inline bool dimension_supported(int n) {
  return n >= kMinDimension && n <= kMaxDimension;
}

/// A space-time event: n real coordinates, spatial part first, time last.
/// Fixed small capacity so events are plain values with no allocation.
class Event {
 public:
  Event() : dim_(4) { c_.fill(0.0); }

  explicit Event(int dim) : dim_(dim) {
    if (!dimension_supported(dim)) {
      fail(Errc::unsupported_dimension,
           "event dimension must be between 3 and 6, got " + std::to_string(dim));
    }
    c_.fill(0.0);
  }

  Event(std::initializer_list<double> coords) : dim_(static_cast<int>(coords.size())) {
    if (!dimension_supported(dim_)) {
      fail(Errc::unsupported_dimension,
           "event dimension must be between 3 and 6, got " + std::to_string(dim_));
    }
    c_.fill(0.0);
    int i = 0;
    for (double v : coords) c_[i++] = v;
  }

  static Event from_span(std::span<const double> coords) {
    Event e(static_cast<int>(coords.size()));
    for (int i = 0; i < e.dim_; ++i) e.c_[i] = coords[i];
    return e;
  }

  int dim() const { return dim_; }

  double operator[](int i) const { return c_[static_cast<size_t>(i)]; }
  double& operator[](int i) { return c_[static_cast<size_t>(i)]; }

  /// Last coordinate (the time component).
  double time() const { return c_[static_cast<size_t>(dim_ - 1)]; }

  std::span<const double> coords() const { return {c_.data(), static_cast<size_t>(dim_)}; }

  double euclidean_norm_sq() const {
    double s = 0.0;
    for (int i = 0; i < dim_; ++i) s += c_[i] * c_[i];
    return s;
  }

  double euclidean_norm() const { return std::sqrt(euclidean_norm_sq()); }

  double spatial_norm_sq() const {
    double s = 0.0;
    for (int i = 0; i < dim_ - 1; ++i) s += c_[i] * c_[i];
    return s;
  }

  double spatial_norm() const { return std::sqrt(spatial_norm_sq()); }

  bool all_finite() const {
    for (int i = 0; i < dim_; ++i) {
      if (!std::isfinite(c_[i])) return false;
    }
    return true;
  }

  bool operator==(const Event& other) const {
    if (dim_ != other.dim_) return false;
    for (int i = 0; i < dim_; ++i) {
      if (c_[i] != other.c_[i]) return false;
    }
    return true;
  }

  friend Event operator+(const Event& a, const Event& b) {
    Event r(a.dim_);
    for (int i = 0; i < a.dim_; ++i) r.c_[i] = a.c_[i] + b.c_[i];
    return r;
  }

  friend Event operator-(const Event& a, const Event& b) {
    Event r(a.dim_);
    for (int i = 0; i < a.dim_; ++i) r.c_[i] = a.c_[i] - b.c_[i];
    return r;
  }

  friend Event operator*(double s, const Event& a) {
    Event r(a.dim_);
    for (int i = 0; i < a.dim_; ++i) r.c_[i] = s * a.c_[i];
    return r;
  }

  friend Event operator-(const Event& a) { return -1.0 * a; }

 private:
  std::array<double, kMaxDimension> c_{};
  int dim_;
};

inline void require_same_dim(const Event& a, const Event& b) {
  if (a.dim() != b.dim()) {
    fail(Errc::dimension_mismatch, "events of dimension " + std::to_string(a.dim()) +
                                       " and " + std::to_string(b.dim()) + " cannot be mixed");
  }
}

/// A point of the cone section: unit spatial part, time coordinate 1.
class Direction {
 public:
  /// Builds a direction from a spatial vector, normalizing it. The time
  /// coordinate is set to exactly 1.
  static Direction from_spatial(std::span<const double> spatial) {
    const int n = static_cast<int>(spatial.size()) + 1;
    if (!dimension_supported(n)) {
      fail(Errc::unsupported_dimension, "spatial part of unsupported dimension");
    }
    double norm_sq = 0.0;
    for (double v : spatial) norm_sq += v * v;
    if (!(norm_sq > 0.0) || !std::isfinite(norm_sq)) {
      fail(Errc::invalid_argument, "direction needs a nonzero finite spatial part");
    }
    const double inv = 1.0 / std::sqrt(norm_sq);
    Event e(n);
    for (int i = 0; i < n - 1; ++i) e[i] = spatial[i] * inv;
    e[n - 1] = 1.0;
    return Direction(e);
  }

  /// Interprets an event as a cone-section point. The time coordinate must
  /// already be 1 and the spatial part close to unit; the spatial part is
  /// re-normalized so the invariant holds in working precision.
  static Direction from_event(const Event& e) {
    if (std::abs(e.time() - 1.0) > 1e-12) {
      fail(Errc::invalid_argument, "cone-section point must have time coordinate 1");
    }
    const double sp = e.spatial_norm();
    if (std::abs(sp - 1.0) > 1e-6) {
      fail(Errc::invalid_argument, "cone-section point must have unit spatial part");
    }
    return from_spatial(e.coords().subspan(0, static_cast<size_t>(e.dim() - 1)));
  }

  const Event& as_event() const { return e_; }
  int dim() const { return e_.dim(); }
  double operator[](int i) const { return e_[i]; }

  bool operator==(const Direction& other) const { return e_ == other.e_; }

 private:
  explicit Direction(const Event& e) : e_(e) {}
  Event e_;
};

/// The line base + R*dir; null direction makes every two points coherent.
struct CoherentLine {
  Event base;
  Direction dir;

  Event at(double t) const { return base + t * dir.as_event(); }
};

}  // namespace conekit
