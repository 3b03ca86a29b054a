#include "minkowski.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "rng.hpp"

namespace conekit {

Direction project_to_section(const Event& a, const Event& m, const Tolerance& tol) {
  require_same_dim(a, m);
  const Event d = m - a;
  if (d.euclidean_norm() <= tol.distinctness(a, m)) {
    fail(Errc::vertex_coincidence, "cannot project the vertex onto its own cone section");
  }
  if (std::abs(quadratic_form(d)) > tol.scale(d)) {
    fail(Errc::not_coherent, "point is not on the cone of the given vertex");
  }
  const double t = eta(d);
  if (std::abs(t) <= tol.tau_rel * (1.0 + d.euclidean_norm())) {
    fail(Errc::time_component_vanishes,
         "time component of the difference vanishes; no section representative");
  }
  const int n = d.dim();
  Event scaled = (1.0 / t) * d;
  // A null difference has equal time and spatial sizes, so after division
  // the spatial part sits near 1. A large gap means the input only passed
  // the coherency test because both components were tiny.
  const double sp = scaled.spatial_norm();
  if (std::abs(sp - 1.0) > 0.1) {
    fail(Errc::not_coherent, "difference is too far from the cone to define a direction");
  }
  return Direction::from_spatial(scaled.coords().subspan(0, static_cast<size_t>(n - 1)));
}

bool collinear(const Event& a, const Event& b, const Event& c, const Tolerance& tol) {
  require_same_dim(a, b);
  require_same_dim(a, c);
  const Event u = b - a;
  const Event v = c - a;
  const int n = a.dim();
  const double band = tol.tau_rel * (1.0 + u.euclidean_norm() * v.euclidean_norm());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (std::abs(u[i] * v[j] - u[j] * v[i]) > band) return false;
    }
  }
  return true;
}

Event find_common_coherent(const Event& x, const Event& y) {
  require_same_dim(x, y);
  const int n = x.dim();
  const Event d = y - x;
  const double tau = eta(d);
  const double s = d.spatial_norm();
  Event step(n);
  if (s > 0.0) {
    for (int i = 0; i < n - 1; ++i) step[i] = d[i] / s;
  } else {
    step[n - 2] = 1.0;
  }
  step[n - 1] = 1.0;
  return x + (0.5 * (s + tau)) * step;
}

namespace {

// Flips the sign of the spatial part, so that polar(x, w) equals the
// euclidean product of x with flip(w).
Event flip_spatial(const Event& r) {
  Event out = r;
  for (int i = 0; i < r.dim() - 1; ++i) out[i] = -out[i];
  return out;
}

double dot(const Event& a, const Event& b) {
  double s = 0.0;
  for (int i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

// Euclidean Gram-Schmidt complement of {w1, w2}, scanned over the standard
// basis in index order so the result is reproducible.
std::vector<Event> complement_basis(const Event& w1, const Event& w2) {
  const int n = w1.dim();
  std::vector<Event> ortho;
  auto reduce = [&](Event v) {
    for (const Event& w : ortho) v = v - dot(v, w) * w;
    return v;
  };
  auto push_unit = [&](const Event& v, double floor) {
    const double norm = v.euclidean_norm();
    if (norm <= floor) return false;
    ortho.push_back((1.0 / norm) * v);
    return true;
  };
  if (!push_unit(reduce(w1), 1e-12 * (1.0 + w1.euclidean_norm())) ||
      !push_unit(reduce(w2), 1e-12 * (1.0 + w2.euclidean_norm()))) {
    fail(Errc::collinear_inputs, "difference vectors do not span a plane");
  }
  std::vector<Event> basis;
  for (int i = 0; i < n && static_cast<int>(basis.size()) < n - 2; ++i) {
    Event e(n);
    e[i] = 1.0;
    const Event r = reduce(e);
    if (push_unit(r, 1e-6)) basis.push_back(ortho.back());
  }
  if (static_cast<int>(basis.size()) != n - 2) {
    fail(Errc::no_convergence, "complement basis construction lost rank");
  }
  return basis;
}

}  // namespace

Event find_transversal_coherent(const Event& a, const Event& b, const Event& c,
                                const Tolerance& tol) {
  require_same_dim(a, b);
  require_same_dim(a, c);
  const int n = a.dim();
  if (n < 4) {
    fail(Errc::unsupported_dimension, "transversal construction needs dimension at least 4");
  }
  const Event zero(n);
  for (const Event* r : {&a, &b, &c}) {
    if (std::abs(quadratic_form(*r)) > tol.scale(*r)) {
      fail(Errc::not_null, "inputs must be null vectors");
    }
    if (r->euclidean_norm() <= tol.distinctness(zero, *r)) {
      fail(Errc::not_null, "inputs must be nonzero");
    }
  }
  if (collinear(zero, a, b, tol) || collinear(zero, b, c, tol) || collinear(zero, a, c, tol)) {
    fail(Errc::collinear_inputs, "inputs must be pairwise non-proportional");
  }

  // P = {a-b, b-c} orthogonal under the polar form, which is the euclidean
  // complement of the flipped difference vectors.
  const std::vector<Event> basis = complement_basis(flip_spatial(a - b), flip_spatial(b - c));

  const double a_norm = a.euclidean_norm();
  auto score = [&](const Event& cand) -> double {
    const double norm = cand.euclidean_norm();
    if (norm <= 1e-12) return 0.0;
    const Event unit = (1.0 / norm) * cand;
    return std::min(std::abs(quadratic_form(unit)), std::abs(polar(unit, a)) / a_norm);
  };

  constexpr double kAcceptScore = 1e-6;
  constexpr int kRetries = 8;
  Sampler perturb(0x7C8D9EAFB0C1D2E3ULL);
  for (int attempt = 0; attempt <= kRetries; ++attempt) {
    std::vector<Event> candidates;
    if (attempt == 0) {
      candidates = basis;
      for (size_t i = 0; i < basis.size(); ++i) {
        for (size_t j = i + 1; j < basis.size(); ++j) {
          candidates.push_back(basis[i] + basis[j]);
        }
      }
    } else {
      for (size_t i = 0; i < 2 * basis.size(); ++i) {
        Event cand(n);
        for (const Event& p : basis) cand = cand + perturb.uniform(-1.0, 1.0) * p;
        candidates.push_back(cand);
      }
    }
    Event best(n);
    double best_score = 0.0;
    for (const Event& cand : candidates) {
      const double s = score(cand);
      if (s > best_score) {
        best_score = s;
        best = cand;
      }
    }
    if (best_score > kAcceptScore) {
      const double t0 = 2.0 * polar(best, a) / quadratic_form(best);
      return t0 * best;
    }
  }
  fail(Errc::no_convergence, "no usable transversal direction found in the complement plane");
}

}  // namespace conekit
