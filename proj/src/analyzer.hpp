#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "event.hpp"
#include "minkowski.hpp"
#include "rng.hpp"
#include "sphere_mesh.hpp"
#include "tolerance.hpp"
#include "transforms.hpp"

namespace conekit {

/// Deterministic point evaluation plus optional provenance. Table maps keep
/// their rows so analysis can restrict itself to the known domain.
struct BlackBoxMap {
  int dim = 4;
  std::function<Event(const Event&)> eval;
  std::string kind;
  std::shared_ptr<const std::vector<std::pair<Event, Event>>> table;

  Event operator()(const Event& r) const { return eval(r); }
};

/// r2 differs from r1 by a multiple of a null direction.
std::pair<Event, Event> sample_coherent_pair(Sampler& s, int dim, double scale);

struct CheckWitness {
  Event r1, r2, out1, out2;
  double q_in = 0.0;
  double q_out = 0.0;
};

struct CheckReport {
  bool passed = true;
  double max_normalized = 0.0;
  int pairs = 0;
  std::optional<CheckWitness> worst;
};

/// Samples coherent input pairs (or scans table rows) and reports the worst
/// output nullity violation, normalized by the tolerance band.
CheckReport check_coherency_preservation(const BlackBoxMap& map, uint64_t seed, int count,
                                         const Tolerance& tol = {}, double scale = 10.0);

/// True when the map sends every probed point of the line a + R p to the
/// image of a. Probes walk a geometric ladder of both signs.
bool constant_line_detect(const BlackBoxMap& map, const Event& a, const Direction& p,
                          int probes = 7, const Tolerance& tol = {});

/// Image direction of the line a + R p under the map, as a point of the cone
/// section at the image of a.
Direction induced_sphere_map(const BlackBoxMap& map, const Event& a, const Direction& p,
                             const Tolerance& tol = {});

struct DegreeResult {
  int value = 0;
  bool quality = false;
  double raw = 0.0;
  double max_image_diameter = 0.0;
};

/// Topological degree of the induced sphere map at base point a, as the
/// total signed solid angle swept by the image mesh over 4 pi. Dimension 4
/// only. The quality flag drops when the sum strays from an integer or the
/// mesh is too coarse for the map.
DegreeResult degree(const BlackBoxMap& map, const Event& a, const SphereMesh& mesh,
                    const Tolerance& tol = {});

/// Least-squares vertex of a light cone through the sample points, by
/// damped Gauss-Newton with a median-first multistart.
std::pair<Event, double> fit_cone_vertex(const std::vector<Event>& samples, uint64_t seed);

struct SimilarityVerdict {
  PoincareSimilarity ps;
  double residual = 0.0;
};
struct DegenerateVerdict {
  Event vertex;
  double residual = 0.0;
};
struct ViolatorVerdict {
  CheckWitness witness;
  double magnitude = 0.0;
};
struct InconclusiveVerdict {
  std::optional<double> affine_residual;
  std::optional<double> vertex_residual;
  int collapsed_lines = 0;
  int probed_lines = 0;
  std::optional<int> degree_attempt;
};

using Classification =
    std::variant<SimilarityVerdict, DegenerateVerdict, ViolatorVerdict, InconclusiveVerdict>;

struct ClassifyConfig {
  int check_pairs = 100000;
  int fit_samples = 512;
  double box = 10.0;
  Tolerance tol = {};
  double affine_residual_threshold = 1e-6;
  double vertex_residual_threshold = 1e-6;
};

/// The dichotomy pipeline: violator, else similarity, else degenerate, else
/// inconclusive with diagnostics.
Classification classify(const BlackBoxMap& map, uint64_t seed, const ClassifyConfig& config = {});

}  // namespace conekit
