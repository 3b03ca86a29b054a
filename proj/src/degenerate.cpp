#include "degenerate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rng.hpp"

namespace conekit {

double bump(const Event& center, double radius, const Event& r) {
  if (!(radius > 0.0)) {
    fail(Errc::invalid_argument, "bump radius must be positive");
  }
  return std::max(0.0, 1.0 - (r - center).euclidean_norm() / radius);
}

namespace {

void check_structure(const DegenerateSpec& spec) {
  for (const Patch& p : spec.patches) {
    if (p.center.dim() != spec.vertex.dim() || p.direction.dim() != spec.vertex.dim()) {
      fail(Errc::invalid_spec, "patch dimension differs from the vertex dimension");
    }
    if (!(p.radius > 0.0) || !std::isfinite(p.radius) || !std::isfinite(p.amplitude)) {
      fail(Errc::invalid_spec, "patch radius must be positive and all fields finite");
    }
  }
}

// Uniform point of the open ball: direction times radius * u^(1/n).
Event ball_point(Sampler& s, const Event& center, double radius) {
  const int n = center.dim();
  Event dir(n);
  double norm_sq = 0.0;
  do {
    norm_sq = 0.0;
    for (int i = 0; i < n; ++i) {
      dir[i] = s.normal();
      norm_sq += dir[i] * dir[i];
    }
  } while (norm_sq <= 1e-24);
  const double rho = radius * std::pow(s.uniform01(), 1.0 / n) / std::sqrt(norm_sq);
  // Shrink slightly so the point is interior even after rounding.
  return center + (0.999999 * rho) * dir;
}

}  // namespace

Event eval(const DegenerateSpec& spec, const Event& r) {
  check_structure(spec);
  require_same_dim(spec.vertex, r);
  for (const Patch& p : spec.patches) {
    const double f = bump(p.center, p.radius, r);
    if (f > 0.0) return spec.vertex + (p.amplitude * f) * p.direction.as_event();
  }
  return spec.vertex;
}

ValidationReport validate_spec(const DegenerateSpec& spec, uint64_t seed, int brute_force_pairs,
                               const Tolerance& tol) {
  ValidationReport report;
  try {
    check_structure(spec);
  } catch (const Error& e) {
    report.valid = false;
    report.structure_ok = false;
    report.message = e.what();
    return report;
  }

  const int m = static_cast<int>(spec.patches.size());
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const Patch& a = spec.patches[i];
      const Patch& b = spec.patches[j];
      const Event delta = a.center - b.center;
      const double rho = a.radius + b.radius;
      const double spatial = delta.spatial_norm();
      const double time_gap = std::abs(eta(delta));
      // Cross-patch differences have spatial size in [spatial - rho,
      // spatial + rho] and time size in [time_gap - rho, time_gap + rho];
      // disjoint intervals leave no room for a null difference.
      const bool separated = (spatial - rho > time_gap + rho) || (time_gap - rho > spatial + rho);
      const bool disjoint = delta.euclidean_norm() > rho;
      report.pair_checks.push_back({i, j, separated, disjoint});
      if (!separated || !disjoint) report.valid = false;
    }
  }

  if (m >= 2) {
    // Confirmation stage: seeded cross-patch samples.
    Sampler s(seed);
    double min_abs_q = std::numeric_limits<double>::infinity();
    for (int it = 0; it < brute_force_pairs; ++it) {
      const int i = static_cast<int>(s.next_raw() % static_cast<uint64_t>(m));
      int j = static_cast<int>(s.next_raw() % static_cast<uint64_t>(m - 1));
      if (j >= i) ++j;
      const Event r1 = ball_point(s, spec.patches[i].center, spec.patches[i].radius);
      const Event r2 = ball_point(s, spec.patches[j].center, spec.patches[j].radius);
      const double qv = quadratic_form(r1 - r2);
      min_abs_q = std::min(min_abs_q, std::abs(qv));
      if (std::abs(qv) <= tol.scale(r1 - r2)) {
        report.witness = WitnessPair{r1, r2, qv};
      }
    }
    report.brute_force_pairs = brute_force_pairs;
    report.brute_force_min_abs_q = min_abs_q;
    if (report.witness) report.valid = false;

    // When the interval criterion failed for a pair, hunt for a concrete
    // coherent pair inside those two balls: find samples with q of both
    // signs and bisect; balls are convex, so interpolants stay inside.
    if (!report.valid && !report.witness) {
      for (const PairCheck& pc : report.pair_checks) {
        if (pc.separated && pc.disjoint) continue;
        const Patch& a = spec.patches[pc.j1];
        const Patch& b = spec.patches[pc.j2];
        Sampler s2(derive_seed(seed, 1000 + static_cast<uint64_t>(pc.j1) * 64 +
                                         static_cast<uint64_t>(pc.j2)));
        std::optional<std::pair<Event, Event>> positive;
        std::optional<std::pair<Event, Event>> negative;
        for (int it = 0; it < 4000 && !report.witness && !(positive && negative); ++it) {
          const Event r1 = ball_point(s2, a.center, a.radius);
          const Event r2 = ball_point(s2, b.center, b.radius);
          const double qv = quadratic_form(r1 - r2);
          if (std::abs(qv) <= tol.scale(r1 - r2)) {
            report.witness = WitnessPair{r1, r2, qv};
          } else if (qv > 0.0) {
            positive = {r1, r2};
          } else {
            negative = {r1, r2};
          }
        }
        if (!report.witness && positive && negative) {
          Event lo1 = positive->first, lo2 = positive->second;
          Event hi1 = negative->first, hi2 = negative->second;
          for (int step = 0; step < 200; ++step) {
            const Event mid1 = 0.5 * (lo1 + hi1);
            const Event mid2 = 0.5 * (lo2 + hi2);
            const double qv = quadratic_form(mid1 - mid2);
            if (std::abs(qv) <= tol.scale(mid1 - mid2)) {
              report.witness = WitnessPair{mid1, mid2, qv};
              break;
            }
            if (qv > 0.0) {
              lo1 = mid1;
              lo2 = mid2;
            } else {
              hi1 = mid1;
              hi2 = mid2;
            }
          }
        }
        if (report.witness) break;
      }
    }
  } else {
    report.brute_force_min_abs_q = std::numeric_limits<double>::infinity();
  }

  if (!report.valid && report.message.empty()) {
    report.message = report.witness ? "coherent cross-patch pair found"
                                    : "separation criterion fails for some patch pair";
  }
  return report;
}

DegenerateSpec build_default(int count, double epsilon, const Event& vertex, uint64_t seed) {
  if (count < 0) {
    fail(Errc::invalid_argument, "patch count must be nonnegative");
  }
  if (!(epsilon > 0.0) || !(epsilon < 0.25)) {
    fail(Errc::epsilon_too_large,
         "patch radius must lie in (0, 1/4) to separate unit-spaced centers");
  }
  DegenerateSpec spec;
  spec.vertex = vertex;
  const int n = vertex.dim();
  Sampler s(seed);
  for (int j = 0; j < count; ++j) {
    Event center(n);
    center[0] = static_cast<double>(j);
    double amplitude = s.uniform(0.5, 2.0);
    if (s.uniform01() < 0.5) amplitude = -amplitude;
    spec.patches.push_back({center, epsilon, s.direction(n), amplitude});
  }
  return spec;
}

}  // namespace conekit
