#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "analyzer.hpp"
#include "degenerate.hpp"
#include "event.hpp"
#include "transforms.hpp"

namespace conekit {

/// Pointwise map given by explicit rows; defined nowhere else.
struct TableSpec {
  int dim = 4;
  std::vector<std::pair<Event, Event>> rows;
};

using MapSpec = std::variant<AffineMap, PoincareSimilarity, DegenerateSpec, TableSpec>;

/// Interchange format: {"kind": ..., "dimension": n, payload}. Kinds are
/// "affine" (L row-major, b), "similarity" (k, Q row-major, a), "degenerate"
/// (vertex, patches), "table" (rows of in/out).
MapSpec load_mapspec(const nlohmann::json& j);
MapSpec load_mapspec_text(const std::string& text);

nlohmann::json save_mapspec(const MapSpec& spec);

std::string kind_of(const MapSpec& spec);
int dim_of(const MapSpec& spec);

/// Evaluation closure over the spec. Table maps reject inputs outside their
/// rows and carry the rows for domain-restricted analysis.
BlackBoxMap to_blackbox(const MapSpec& spec);

nlohmann::json event_to_json(const Event& e);
Event event_from_json(const nlohmann::json& j, int expect_dim);

}  // namespace conekit
