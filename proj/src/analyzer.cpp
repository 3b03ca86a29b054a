#include "analyzer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

namespace conekit {

std::pair<Event, Event> sample_coherent_pair(Sampler& s, int dim, double scale) {
  if (!(scale > 0.0)) {
    fail(Errc::invalid_argument, "sampling scale must be positive");
  }
  const Event r1 = s.box_event(dim, scale);
  const Direction p = s.direction(dim);
  const double t = s.uniform(-scale, scale);
  return {r1, r1 + t * p.as_event()};
}

namespace {

double normalized_violation(const Event& out1, const Event& out2, const Tolerance& tol) {
  const Event d = out1 - out2;
  return std::abs(quadratic_form(d)) / tol.scale(d);
}

void track_worst(CheckReport& report, const Event& r1, const Event& r2, const Event& out1,
                 const Event& out2, const Tolerance& tol) {
  const double v = normalized_violation(out1, out2, tol);
  ++report.pairs;
  if (!report.worst || v > report.max_normalized) {
    report.max_normalized = v;
    report.worst = CheckWitness{r1,   r2, out1, out2, quadratic_form(r1 - r2),
                                quadratic_form(out1 - out2)};
  }
}

}  // namespace

CheckReport check_coherency_preservation(const BlackBoxMap& map, uint64_t seed, int count,
                                         const Tolerance& tol, double scale) {
  if (count < 1) {
    fail(Errc::invalid_argument, "pair count must be positive");
  }
  CheckReport report;
  if (map.table) {
    // Table maps are only defined on their rows, so coherent pairs come
    // from a row scan. Full quadratic scan up to a size cutoff, then a
    // seeded subset.
    const auto& rows = *map.table;
    const int n = static_cast<int>(rows.size());
    if (n <= 4096) {
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          if (!is_coherent(rows[i].first, rows[j].first, tol)) continue;
          track_worst(report, rows[i].first, rows[j].first, rows[i].second, rows[j].second, tol);
        }
      }
    } else {
      for (int it = 0; it < count; ++it) {
        Sampler s(derive_seed(seed, static_cast<uint64_t>(it)));
        const int i = static_cast<int>(s.next_raw() % static_cast<uint64_t>(n));
        int j = static_cast<int>(s.next_raw() % static_cast<uint64_t>(n - 1));
        if (j >= i) ++j;
        if (!is_coherent(rows[i].first, rows[j].first, tol)) continue;
        track_worst(report, rows[i].first, rows[j].first, rows[i].second, rows[j].second, tol);
      }
    }
  } else {
    for (int it = 0; it < count; ++it) {
      Sampler s(derive_seed(seed, static_cast<uint64_t>(it)));
      const auto [r1, r2] = sample_coherent_pair(s, map.dim, scale);
      track_worst(report, r1, r2, map(r1), map(r2), tol);
    }
  }
  report.passed = report.max_normalized <= 1.0;
  return report;
}

bool constant_line_detect(const BlackBoxMap& map, const Event& a, const Direction& p, int probes,
                          const Tolerance& tol) {
  if (probes < 3) {
    fail(Errc::invalid_argument, "need at least three probes");
  }
  const Event fa = map(a);
  double t = 1.0;
  for (int i = 0; i < probes; ++i) {
    const double signed_t = (i % 2 == 0) ? t : -t;
    const Event y = map(a + signed_t * p.as_event());
    if ((y - fa).euclidean_norm() > tol.distinctness(fa, y)) return false;
    if (i % 2 == 1) t *= 2.0;
  }
  return true;
}

Direction induced_sphere_map(const BlackBoxMap& map, const Event& a, const Direction& p,
                             const Tolerance& tol) {
  const Event fa = map(a);
  bool moved = false;
  // Candidate parameters: 1, then halves, then doublings.
  for (int i = 0; i < 24; ++i) {
    double t;
    if (i == 0) {
      t = 1.0;
    } else if (i <= 12) {
      t = std::ldexp(1.0, -i);
    } else {
      t = std::ldexp(1.0, i - 12);
    }
    const Event y = map(a + t * p.as_event());
    const Event d = y - fa;
    if (d.euclidean_norm() <= tol.distinctness(fa, y)) continue;
    moved = true;
    if (std::abs(eta(d)) <= tol.tau_rel * (1.0 + d.euclidean_norm())) continue;
    return project_to_section(fa, y, tol);
  }
  if (!moved) {
    fail(Errc::line_collapse, "map is constant on the probed coherent line");
  }
  fail(Errc::time_component_vanishes,
       "image line direction has no usable time component");
}

DegreeResult degree(const BlackBoxMap& map, const Event& a, const SphereMesh& mesh,
                    const Tolerance& tol) {
  if (map.dim != 4) {
    fail(Errc::unsupported_dimension, "degree computation works on the 2-sphere only");
  }
  std::vector<Vec3> image(mesh.vertices.size());
  for (size_t i = 0; i < mesh.vertices.size(); ++i) {
    const Direction p = Direction::from_spatial(
        {mesh.vertices[i].data(), mesh.vertices[i].size()});
    const Direction out = induced_sphere_map(map, a, p, tol);
    image[i] = {out[0], out[1], out[2]};
  }
  double total = 0.0;
  double max_diam = 0.0;
  for (const auto& tri : mesh.triangles) {
    const Vec3& w0 = image[tri[0]];
    const Vec3& w1 = image[tri[1]];
    const Vec3& w2 = image[tri[2]];
    total += signed_solid_angle(w0, w1, w2);
    max_diam = std::max(max_diam, spherical_diameter(w0, w1, w2));
  }
  DegreeResult result;
  result.raw = total / (4.0 * std::numbers::pi);
  result.value = static_cast<int>(std::lround(result.raw));
  result.max_image_diameter = max_diam;
  result.quality = std::abs(result.raw - result.value) <= 0.1 &&
                   max_diam <= std::numbers::pi / 2.0;
  return result;
}

namespace {

struct VertexFitOutcome {
  Event s;
  double objective = 0.0;
  bool converged = false;
};

double cone_objective(const std::vector<Event>& samples, const Event& s) {
  double total = 0.0;
  for (const Event& y : samples) {
    const double f = quadratic_form(y - s);
    total += f * f;
  }
  return total;
}

VertexFitOutcome levenberg_run(const std::vector<Event>& samples, Event s) {
  const int n = s.dim();
  const MatrixNd m_sig = signature_matrix(n);
  double lambda = 1e-3;
  VertexFitOutcome out;
  out.s = s;
  out.objective = cone_objective(samples, s);
  for (int iter = 0; iter < 200; ++iter) {
    Eigen::MatrixXd jtj = Eigen::MatrixXd::Zero(n, n);
    Eigen::VectorXd g = Eigen::VectorXd::Zero(n);
    for (const Event& y : samples) {
      const VectorNd d = to_vector(y - out.s);
      const double f = quadratic_form(y - out.s);
      const VectorNd row = -2.0 * (m_sig * d);
      jtj += row * row.transpose();
      g += row * f;
    }
    // g is the gradient of half the objective.
    if (2.0 * g.norm() <= 1e-10 * (1.0 + out.objective)) {
      out.converged = true;
      return out;
    }
    bool stepped = false;
    for (int inner = 0; inner < 40; ++inner) {
      const Eigen::MatrixXd damped =
          jtj + lambda * Eigen::MatrixXd::Identity(n, n);
      const Eigen::VectorXd delta = damped.ldlt().solve(-g);
      Event trial = out.s;
      for (int i = 0; i < n; ++i) trial[i] += delta(i);
      const double f_trial = cone_objective(samples, trial);
      if (f_trial < out.objective) {
        out.s = trial;
        out.objective = f_trial;
        lambda = std::max(lambda / 3.0, 1e-12);
        stepped = true;
        break;
      }
      lambda *= 10.0;
      if (lambda > 1e16) break;
    }
    if (!stepped) {
      // Stalled at a stationary point the damping cannot leave.
      out.converged = 2.0 * g.norm() <= 1e-10 * (1.0 + out.objective);
      return out;
    }
  }
  return out;
}

double vertex_residual(const std::vector<Event>& samples, const Event& s) {
  double total = 0.0;
  for (const Event& y : samples) {
    const Event d = y - s;
    const double normalized = quadratic_form(d) / (1.0 + d.euclidean_norm_sq());
    total += normalized * normalized;
  }
  return std::sqrt(total / static_cast<double>(samples.size()));
}

}  // namespace

std::pair<Event, double> fit_cone_vertex(const std::vector<Event>& samples, uint64_t seed) {
  if (samples.size() < 5) {
    fail(Errc::invalid_argument, "vertex fit needs at least five samples");
  }
  const int n = samples.front().dim();
  for (const Event& y : samples) require_same_dim(y, samples.front());

  // Median start first: when most outputs already sit at the vertex, the
  // median hits it exactly and wins every tie below.
  std::vector<Event> starts;
  Event median(n);
  std::vector<double> column(samples.size());
  for (int j = 0; j < n; ++j) {
    for (size_t i = 0; i < samples.size(); ++i) column[i] = samples[i][j];
    std::nth_element(column.begin(), column.begin() + column.size() / 2, column.end());
    median[j] = column[column.size() / 2];
  }
  starts.push_back(median);
  for (int i = 0; i < 8; ++i) {
    Sampler s(derive_seed(seed, static_cast<uint64_t>(i)));
    starts.push_back(samples[s.next_raw() % samples.size()]);
  }

  std::optional<VertexFitOutcome> best;
  for (const Event& start : starts) {
    const VertexFitOutcome outcome = levenberg_run(samples, start);
    if (!outcome.converged) continue;
    if (!best || outcome.objective < best->objective * (1.0 - 1e-12) - 1e-300) {
      best = outcome;
    }
  }
  if (!best) {
    fail(Errc::no_convergence, "no start of the vertex fit reached the gradient criterion");
  }
  return {best->s, vertex_residual(samples, best->s)};
}

Classification classify(const BlackBoxMap& map, uint64_t seed, const ClassifyConfig& config) {
  const ClassifyConfig defaults;
  if (config.check_pairs < defaults.check_pairs / 10 ||
      config.fit_samples < (defaults.fit_samples + 9) / 10) {
    fail(Errc::invalid_argument, "sample counts below a tenth of the defaults");
  }

  const CheckReport check =
      check_coherency_preservation(map, derive_seed(seed, 1), config.check_pairs, config.tol,
                                   config.box);
  if (!check.passed) {
    return ViolatorVerdict{*check.worst, check.max_normalized};
  }

  std::vector<std::pair<Event, Event>> samples;
  if (map.table) {
    const auto& rows = *map.table;
    const auto take = static_cast<std::ptrdiff_t>(std::min<size_t>(rows.size(), 4096));
    samples.assign(rows.begin(), rows.begin() + take);
  } else {
    samples.reserve(config.fit_samples);
    for (int i = 0; i < config.fit_samples; ++i) {
      Sampler s(derive_seed(derive_seed(seed, 2), static_cast<uint64_t>(i)));
      const Event r = s.box_event(map.dim, config.box);
      samples.emplace_back(r, map(r));
    }
  }

  std::optional<double> affine_residual;
  if (samples.size() >= static_cast<size_t>(map.dim) + 1) {
    try {
      const auto [am, res] = fit_affine(samples);
      affine_residual = res;
      if (res <= config.affine_residual_threshold) {
        if (auto ps = decompose_similarity(am)) {
          return SimilarityVerdict{*ps, res};
        }
      }
    } catch (const Error&) {
    }
  }

  std::optional<double> cone_residual;
  if (samples.size() >= 5) {
    std::vector<Event> outputs;
    outputs.reserve(samples.size());
    for (const auto& [r, y] : samples) outputs.push_back(y);
    try {
      const auto [vertex, res] = fit_cone_vertex(outputs, derive_seed(seed, 3));
      cone_residual = res;
      if (res <= config.vertex_residual_threshold) {
        return DegenerateVerdict{vertex, res};
      }
    } catch (const Error&) {
    }
  }

  InconclusiveVerdict diag;
  diag.affine_residual = affine_residual;
  diag.vertex_residual = cone_residual;
  // Line probes and the degree need off-sample evaluations, which a table
  // map cannot answer.
  if (!map.table) {
    diag.probed_lines = 100;
    for (int i = 0; i < diag.probed_lines; ++i) {
      Sampler s(derive_seed(derive_seed(seed, 4), static_cast<uint64_t>(i)));
      const Event a = s.box_event(map.dim, config.box);
      const Direction p = s.direction(map.dim);
      if (constant_line_detect(map, a, p, 7, config.tol)) ++diag.collapsed_lines;
    }
    if (map.dim == 4 && !samples.empty()) {
      try {
        const SphereMesh mesh = SphereMesh::icosphere(3);
        diag.degree_attempt = degree(map, samples.front().first, mesh, config.tol).value;
      } catch (const Error&) {
      }
    }
  }
  return diag;
}

}  // namespace conekit
