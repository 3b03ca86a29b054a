#include "mapspec.hpp"

#include <cstring>
#include <memory>
#include <unordered_map>

namespace conekit {

namespace {

using nlohmann::json;

[[noreturn]] void bad_spec(const std::string& message) { fail(Errc::invalid_spec, message); }

double finite_number(const json& j, const char* what) {
  if (!j.is_number()) bad_spec(std::string(what) + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) bad_spec(std::string(what) + " must be finite");
  return v;
}

int read_dimension(const json& j) {
  const int n = j.value("dimension", 4);
  if (!dimension_supported(n)) bad_spec("dimension must be between 3 and 6");
  return n;
}

MatrixNd matrix_from_json(const json& j, int n, const char* what) {
  if (!j.is_array() || j.size() != static_cast<size_t>(n) * n) {
    bad_spec(std::string(what) + " must hold dimension^2 numbers, row major");
  }
  MatrixNd m(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) m(r, c) = finite_number(j[r * n + c], what);
  }
  return m;
}

json matrix_to_json(const MatrixNd& m) {
  json out = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) out.push_back(m(r, c));
  }
  return out;
}

// Exact-bits lookup key for table rows.
std::string coords_key(const Event& e) {
  std::string key(sizeof(double) * static_cast<size_t>(e.dim()), '\0');
  for (int i = 0; i < e.dim(); ++i) {
    double v = e[i];
    std::memcpy(key.data() + sizeof(double) * static_cast<size_t>(i), &v, sizeof(double));
  }
  return key;
}

}  // namespace

json event_to_json(const Event& e) {
  json out = json::array();
  for (int i = 0; i < e.dim(); ++i) out.push_back(e[i]);
  return out;
}

Event event_from_json(const json& j, int expect_dim) {
  if (!j.is_array() || j.size() != static_cast<size_t>(expect_dim)) {
    bad_spec("event must be an array of dimension numbers");
  }
  Event e(expect_dim);
  for (int i = 0; i < expect_dim; ++i) e[i] = finite_number(j[i], "event coordinate");
  return e;
}

namespace {

MapSpec load_mapspec_impl(const json& j) {
  if (!j.is_object()) bad_spec("spec must be a JSON object");
  const std::string kind = j.value("kind", "");
  const int n = read_dimension(j);
  if (kind == "affine") {
    AffineMap am;
    am.l = matrix_from_json(j.at("L"), n, "L");
    am.b = event_from_json(j.at("b"), n);
    return am;
  }
  if (kind == "similarity") {
    const double k = finite_number(j.at("k"), "k");
    if (!(k > 0.0)) bad_spec("similarity scale k must be positive");
    const MatrixNd q = matrix_from_json(j.at("Q"), n, "Q");
    if (!is_lorentz(q)) bad_spec("Q does not satisfy the Lorentz condition");
    return PoincareSimilarity{k, LorentzMatrix::checked(q), event_from_json(j.at("a"), n)};
  }
  if (kind == "degenerate") {
    DegenerateSpec spec;
    spec.vertex = event_from_json(j.at("vertex"), n);
    if (!j.contains("patches") || !j.at("patches").is_array()) {
      bad_spec("degenerate spec needs a patches array");
    }
    for (const json& pj : j.at("patches")) {
      const double radius = finite_number(pj.at("radius"), "radius");
      const double amplitude = finite_number(pj.at("amplitude"), "amplitude");
      if (!(radius > 0.0)) bad_spec("patch radius must be positive");
      const Event dir_event = event_from_json(pj.at("direction"), n);
      try {
        spec.patches.push_back({event_from_json(pj.at("center"), n), radius,
                                Direction::from_event(dir_event), amplitude});
      } catch (const Error& e) {
        bad_spec(std::string("patch direction: ") + e.what());
      }
    }
    return spec;
  }
  if (kind == "table") {
    TableSpec table;
    table.dim = n;
    if (!j.contains("rows") || !j.at("rows").is_array() || j.at("rows").empty()) {
      bad_spec("table spec needs a nonempty rows array");
    }
    for (const json& row : j.at("rows")) {
      table.rows.emplace_back(event_from_json(row.at("in"), n),
                              event_from_json(row.at("out"), n));
    }
    return table;
  }
  bad_spec("kind must be one of affine, similarity, degenerate, table");
}

}  // namespace

MapSpec load_mapspec(const json& j) {
  try {
    return load_mapspec_impl(j);
  } catch (const json::exception& e) {
    fail(Errc::invalid_spec, std::string("missing or mistyped field: ") + e.what());
  }
}

MapSpec load_mapspec_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(Errc::parse_error, std::string("invalid JSON: ") + e.what());
  }
  return load_mapspec(j);
}

json save_mapspec(const MapSpec& spec) {
  json j;
  j["dimension"] = dim_of(spec);
  if (const auto* am = std::get_if<AffineMap>(&spec)) {
    j["kind"] = "affine";
    j["L"] = matrix_to_json(am->l);
    j["b"] = event_to_json(am->b);
  } else if (const auto* ps = std::get_if<PoincareSimilarity>(&spec)) {
    j["kind"] = "similarity";
    j["k"] = ps->k;
    j["Q"] = matrix_to_json(ps->q.entries());
    j["a"] = event_to_json(ps->a);
  } else if (const auto* ds = std::get_if<DegenerateSpec>(&spec)) {
    j["kind"] = "degenerate";
    j["vertex"] = event_to_json(ds->vertex);
    json patches = json::array();
    for (const Patch& p : ds->patches) {
      patches.push_back({{"center", event_to_json(p.center)},
                         {"radius", p.radius},
                         {"direction", event_to_json(p.direction.as_event())},
                         {"amplitude", p.amplitude}});
    }
    j["patches"] = patches;
  } else if (const auto* t = std::get_if<TableSpec>(&spec)) {
    j["kind"] = "table";
    json rows = json::array();
    for (const auto& [in, out] : t->rows) {
      rows.push_back({{"in", event_to_json(in)}, {"out", event_to_json(out)}});
    }
    j["rows"] = rows;
  }
  return j;
}

std::string kind_of(const MapSpec& spec) {
  if (std::holds_alternative<AffineMap>(spec)) return "affine";
  if (std::holds_alternative<PoincareSimilarity>(spec)) return "similarity";
  if (std::holds_alternative<DegenerateSpec>(spec)) return "degenerate";
  return "table";
}

int dim_of(const MapSpec& spec) {
  if (const auto* am = std::get_if<AffineMap>(&spec)) return static_cast<int>(am->l.rows());
  if (const auto* ps = std::get_if<PoincareSimilarity>(&spec)) return ps->q.dim();
  if (const auto* ds = std::get_if<DegenerateSpec>(&spec)) return ds->vertex.dim();
  return std::get<TableSpec>(spec).dim;
}

BlackBoxMap to_blackbox(const MapSpec& spec) {
  BlackBoxMap map;
  map.dim = dim_of(spec);
  map.kind = kind_of(spec);
  if (const auto* am = std::get_if<AffineMap>(&spec)) {
    const AffineMap copy = *am;
    map.eval = [copy](const Event& r) { return copy.apply(r); };
  } else if (const auto* ps = std::get_if<PoincareSimilarity>(&spec)) {
    const PoincareSimilarity copy = *ps;
    map.eval = [copy](const Event& r) { return apply_similarity(copy, r); };
  } else if (const auto* ds = std::get_if<DegenerateSpec>(&spec)) {
    const DegenerateSpec copy = *ds;
    map.eval = [copy](const Event& r) { return eval(copy, r); };
  } else {
    const TableSpec& t = std::get<TableSpec>(spec);
    auto rows = std::make_shared<const std::vector<std::pair<Event, Event>>>(t.rows);
    auto index = std::make_shared<std::unordered_map<std::string, Event>>();
    for (const auto& [in, out] : *rows) index->emplace(coords_key(in), out);
    map.table = rows;
    map.eval = [index](const Event& r) {
      const auto it = index->find(coords_key(r));
      if (it == index->end()) {
        fail(Errc::domain_error, "input is outside the table domain");
      }
      return it->second;
    };
  }
  return map;
}

}  // namespace conekit
