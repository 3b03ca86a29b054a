#pragma once

#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "event.hpp"
#include "rng.hpp"
#include "tolerance.hpp"

namespace conekit {

/// Dense square matrix capped at the largest supported dimension, so no
/// transform ever allocates.
using MatrixNd = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDimension,
                               kMaxDimension>;
using VectorNd = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxDimension, 1>;

MatrixNd signature_matrix(int n);

VectorNd to_vector(const Event& e);
Event to_event(const VectorNd& v);

/// Frobenius test of Q M Q^t = M against tol * n.
bool is_lorentz(const MatrixNd& q, double tol = 1e-9);

/// A verified element of the Lorentz group.
class LorentzMatrix {
 public:
  static LorentzMatrix checked(const MatrixNd& q, double tol = 1e-9);
  static LorentzMatrix identity(int n);

  const MatrixNd& entries() const { return q_; }
  int dim() const { return static_cast<int>(q_.rows()); }

  /// Group inverse M Q^t M, no linear solve needed.
  LorentzMatrix inverse() const;

  friend LorentzMatrix operator*(const LorentzMatrix& a, const LorentzMatrix& b) {
    LorentzMatrix r;
    r.q_ = a.q_ * b.q_;
    return r;
  }

 private:
  LorentzMatrix() = default;
  MatrixNd q_;
};

/// Hyperbolic rotation in the (axis, time) plane; axis is 1-based spatial.
LorentzMatrix boost(int n, int axis, double rapidity);

/// Euclidean rotation in a spatial coordinate plane; indices 1-based.
LorentzMatrix spatial_rotation(int n, int axis1, int axis2, double angle);

/// r -> k Q r + a with k > 0.
struct PoincareSimilarity {
  double k;
  LorentzMatrix q;
  Event a;

  static PoincareSimilarity identity(int n) {
    return {1.0, LorentzMatrix::identity(n), Event(n)};
  }
};

struct SimilarityBounds {
  double k_min = 0.5;
  double k_max = 2.0;
  double translation = 5.0;
  double max_rapidity = 0.6;
  int max_generators = 6;
};

/// Seeded similarity: log-uniform scale, a short random word of boosts and
/// rotations, and a box-uniform translation. Rapidity stays small so induced
/// sphere maps keep a moderate Lipschitz constant.
PoincareSimilarity random_similarity(int n, uint64_t seed, const SimilarityBounds& bounds = {});

Event apply_similarity(const PoincareSimilarity& ps, const Event& r);

PoincareSimilarity compose(const PoincareSimilarity& p1, const PoincareSimilarity& p2);
PoincareSimilarity invert(const PoincareSimilarity& ps);

/// r -> L r + b, not yet known to be a similarity.
struct AffineMap {
  MatrixNd l;
  Event b;

  Event apply(const Event& r) const { return to_event(l * to_vector(r)) + b; }

  static AffineMap from_similarity(const PoincareSimilarity& ps) {
    return {ps.k * ps.q.entries(), ps.a};
  }
};

/// Least-squares affine fit by normal equations. Residual is the root mean
/// square error divided by 1 + the rms output size.
std::pair<AffineMap, double> fit_affine(const std::vector<std::pair<Event, Event>>& samples);

/// Splits L as k Q when the quotient passes the Lorentz test; k comes from
/// |det L|^(1/n). The similarity factor of the form is k^2 and is positive
/// in this signature, so no sign branch exists.
std::optional<PoincareSimilarity> decompose_similarity(const AffineMap& am, double tol = 1e-9);

}  // namespace conekit
