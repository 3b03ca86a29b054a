#include "transforms.hpp"

#include <cmath>
#include <numbers>

namespace conekit {

MatrixNd signature_matrix(int n) {
  MatrixNd m = -MatrixNd::Identity(n, n);
  m(n - 1, n - 1) = 1.0;
  return m;
}

VectorNd to_vector(const Event& e) {
  VectorNd v(e.dim());
  for (int i = 0; i < e.dim(); ++i) v(i) = e[i];
  return v;
}

Event to_event(const VectorNd& v) {
  Event e(static_cast<int>(v.size()));
  for (int i = 0; i < e.dim(); ++i) e[i] = v(i);
  return e;
}

bool is_lorentz(const MatrixNd& q, double tol) {
  if (q.rows() != q.cols()) {
    fail(Errc::invalid_argument, "lorentz test needs a square matrix");
  }
  const int n = static_cast<int>(q.rows());
  if (!dimension_supported(n)) {
    fail(Errc::unsupported_dimension, "matrix dimension out of the supported range");
  }
  const MatrixNd m = signature_matrix(n);
  return (q * m * q.transpose() - m).norm() <= tol * n;
}

LorentzMatrix LorentzMatrix::checked(const MatrixNd& q, double tol) {
  if (!is_lorentz(q, tol)) {
    fail(Errc::invalid_argument, "matrix does not satisfy the Lorentz condition");
  }
  LorentzMatrix out;
  out.q_ = q;
  return out;
}

LorentzMatrix LorentzMatrix::identity(int n) {
  LorentzMatrix out;
  out.q_ = MatrixNd::Identity(n, n);
  return out;
}

LorentzMatrix LorentzMatrix::inverse() const {
  const MatrixNd m = signature_matrix(dim());
  LorentzMatrix out;
  out.q_ = m * q_.transpose() * m;
  return out;
}

LorentzMatrix boost(int n, int axis, double rapidity) {
  if (!dimension_supported(n)) {
    fail(Errc::unsupported_dimension, "dimension out of the supported range");
  }
  if (axis < 1 || axis > n - 1) {
    fail(Errc::invalid_argument, "boost axis must name a spatial coordinate");
  }
  MatrixNd q = MatrixNd::Identity(n, n);
  const int i = axis - 1;
  const int t = n - 1;
  q(i, i) = std::cosh(rapidity);
  q(i, t) = std::sinh(rapidity);
  q(t, i) = std::sinh(rapidity);
  q(t, t) = std::cosh(rapidity);
  return LorentzMatrix::checked(q);
}

LorentzMatrix spatial_rotation(int n, int axis1, int axis2, double angle) {
  if (!dimension_supported(n)) {
    fail(Errc::unsupported_dimension, "dimension out of the supported range");
  }
  if (axis1 < 1 || axis1 > n - 1 || axis2 < 1 || axis2 > n - 1 || axis1 == axis2) {
    fail(Errc::invalid_argument, "rotation plane must name two distinct spatial coordinates");
  }
  MatrixNd q = MatrixNd::Identity(n, n);
  const int i = axis1 - 1;
  const int j = axis2 - 1;
  q(i, i) = std::cos(angle);
  q(i, j) = -std::sin(angle);
  q(j, i) = std::sin(angle);
  q(j, j) = std::cos(angle);
  return LorentzMatrix::checked(q);
}

PoincareSimilarity random_similarity(int n, uint64_t seed, const SimilarityBounds& bounds) {
  if (!(bounds.k_min > 0.0) || !(bounds.k_max >= bounds.k_min) || !(bounds.translation > 0.0)) {
    fail(Errc::invalid_argument, "similarity bounds must be positive");
  }
  Sampler s(seed);
  const double k = std::exp(s.uniform(std::log(bounds.k_min), std::log(bounds.k_max)));
  LorentzMatrix q = LorentzMatrix::identity(n);
  const int generators = 1 + static_cast<int>(s.next_raw() % static_cast<uint64_t>(
                                                  std::max(1, bounds.max_generators)));
  for (int g = 0; g < generators; ++g) {
    if (s.uniform01() < 0.5) {
      const int axis = 1 + static_cast<int>(s.next_raw() % static_cast<uint64_t>(n - 1));
      q = boost(n, axis, s.uniform(-bounds.max_rapidity, bounds.max_rapidity)) * q;
    } else {
      int a1 = 1 + static_cast<int>(s.next_raw() % static_cast<uint64_t>(n - 1));
      int a2 = 1 + static_cast<int>(s.next_raw() % static_cast<uint64_t>(n - 2));
      if (a2 >= a1) ++a2;
      q = spatial_rotation(n, a1, a2, s.uniform(0.0, 2.0 * std::numbers::pi)) * q;
    }
  }
  return {k, q, s.box_event(n, bounds.translation)};
}

Event apply_similarity(const PoincareSimilarity& ps, const Event& r) {
  if (ps.q.dim() != r.dim()) {
    fail(Errc::dimension_mismatch, "similarity and event dimensions differ");
  }
  return to_event(ps.k * (ps.q.entries() * to_vector(r))) + ps.a;
}

PoincareSimilarity compose(const PoincareSimilarity& p1, const PoincareSimilarity& p2) {
  return {p1.k * p2.k, p1.q * p2.q, apply_similarity(p1, p2.a)};
}

PoincareSimilarity invert(const PoincareSimilarity& ps) {
  const LorentzMatrix qi = ps.q.inverse();
  const Event a_back = to_event(qi.entries() * to_vector(ps.a));
  return {1.0 / ps.k, qi, (-1.0 / ps.k) * a_back};
}

std::pair<AffineMap, double> fit_affine(const std::vector<std::pair<Event, Event>>& samples) {
  if (samples.empty()) {
    fail(Errc::degenerate_samples, "affine fit needs samples");
  }
  const int n = samples.front().first.dim();
  const int m = static_cast<int>(samples.size());
  if (m < n + 1) {
    fail(Errc::degenerate_samples, "affine fit needs at least dimension + 1 samples");
  }
  Eigen::MatrixXd x(m, n + 1);
  Eigen::MatrixXd y(m, n);
  for (int i = 0; i < m; ++i) {
    require_same_dim(samples[i].first, samples.front().first);
    require_same_dim(samples[i].second, samples.front().first);
    for (int j = 0; j < n; ++j) {
      x(i, j) = samples[i].first[j];
      y(i, j) = samples[i].second[j];
    }
    x(i, n) = 1.0;
  }
  const Eigen::MatrixXd xtx = x.transpose() * x;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(xtx);
  if (lu.rank() < n + 1) {
    fail(Errc::degenerate_samples, "sample inputs are not in general position");
  }
  const Eigen::MatrixXd beta = lu.solve(x.transpose() * y);

  AffineMap am;
  am.l = beta.topRows(n).transpose();
  Event b(n);
  for (int j = 0; j < n; ++j) b[j] = beta(n, j);
  am.b = b;

  const Eigen::MatrixXd err = x * beta - y;
  const double rms = std::sqrt(err.squaredNorm() / m);
  const double out_scale = 1.0 + std::sqrt(y.squaredNorm() / m);
  return {am, rms / out_scale};
}

std::optional<PoincareSimilarity> decompose_similarity(const AffineMap& am, double tol) {
  const int n = static_cast<int>(am.l.rows());
  const double k = std::pow(std::abs(am.l.determinant()), 1.0 / n);
  if (!(k > tol)) return std::nullopt;
  const MatrixNd q_hat = am.l / k;
  if (!is_lorentz(q_hat, tol)) return std::nullopt;
  return PoincareSimilarity{k, LorentzMatrix::checked(q_hat, tol), am.b};
}

}  // namespace conekit
