#include "report.hpp"

#include <ctime>

#include "mapspec.hpp"

namespace conekit {

namespace {

using nlohmann::json;

json witness_to_json(const CheckWitness& w) {
  return {{"r1", event_to_json(w.r1)},   {"r2", event_to_json(w.r2)},
          {"out1", event_to_json(w.out1)}, {"out2", event_to_json(w.out2)},
          {"q_in", w.q_in},              {"q_out", w.q_out}};
}

}  // namespace

std::string timestamp_utc() {
  const std::time_t now = std::time(nullptr);
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

json report_check(const CheckReport& report, uint64_t seed, int requested_pairs,
                  double tau_rel) {
  json j;
  j["verdict"] = report.passed ? "pass" : "violation";
  j["parameters"] = json::object();
  j["residuals"] = {{"max_normalized_violation", report.max_normalized},
                    {"pairs_checked", report.pairs}};
  j["witnesses"] = json::array();
  if (!report.passed && report.worst) {
    j["witnesses"].push_back(witness_to_json(*report.worst));
  }
  j["seed"] = seed;
  j["config"] = {{"pairs", requested_pairs}, {"tau_rel", tau_rel}};
  j["timestamp"] = timestamp_utc();
  return j;
}

json report_validation(const ValidationReport& report, uint64_t seed) {
  json j;
  j["verdict"] = report.valid ? "valid" : "invalid";
  json pairs = json::array();
  for (const PairCheck& pc : report.pair_checks) {
    pairs.push_back({{"patch_1", pc.j1},
                     {"patch_2", pc.j2},
                     {"separated", pc.separated},
                     {"disjoint", pc.disjoint}});
  }
  j["parameters"] = {{"pair_checks", pairs}, {"structure_ok", report.structure_ok}};
  j["residuals"] = {{"brute_force_pairs", report.brute_force_pairs},
                    {"brute_force_min_abs_q", report.brute_force_min_abs_q}};
  j["witnesses"] = json::array();
  if (report.witness) {
    j["witnesses"].push_back({{"r1", event_to_json(report.witness->r1)},
                              {"r2", event_to_json(report.witness->r2)},
                              {"q", report.witness->q_value}});
  }
  if (!report.message.empty()) j["message"] = report.message;
  j["seed"] = seed;
  j["config"] = json::object();
  j["timestamp"] = timestamp_utc();
  return j;
}

json report_classification(const Classification& result, uint64_t seed,
                           const ClassifyConfig& config) {
  json j;
  j["parameters"] = json::object();
  j["residuals"] = json::object();
  j["witnesses"] = json::array();
  if (const auto* s = std::get_if<SimilarityVerdict>(&result)) {
    j["verdict"] = "similarity";
    json q = json::array();
    const MatrixNd& m = s->ps.q.entries();
    for (int r = 0; r < m.rows(); ++r) {
      for (int c = 0; c < m.cols(); ++c) q.push_back(m(r, c));
    }
    j["parameters"] = {{"k", s->ps.k}, {"Q", q}, {"a", event_to_json(s->ps.a)}};
    j["residuals"]["affine_fit"] = s->residual;
  } else if (const auto* d = std::get_if<DegenerateVerdict>(&result)) {
    j["verdict"] = "degenerate";
    j["parameters"] = {{"vertex", event_to_json(d->vertex)}};
    j["residuals"]["cone_fit"] = d->residual;
  } else if (const auto* v = std::get_if<ViolatorVerdict>(&result)) {
    j["verdict"] = "violator";
    j["residuals"]["max_normalized_violation"] = v->magnitude;
    j["witnesses"].push_back(witness_to_json(v->witness));
  } else {
    const auto& inc = std::get<InconclusiveVerdict>(result);
    j["verdict"] = "inconclusive";
    json diag;
    if (inc.affine_residual) diag["affine_fit"] = *inc.affine_residual;
    if (inc.vertex_residual) diag["cone_fit"] = *inc.vertex_residual;
    diag["collapsed_lines"] = inc.collapsed_lines;
    diag["probed_lines"] = inc.probed_lines;
    if (inc.degree_attempt) diag["degree_attempt"] = *inc.degree_attempt;
    j["residuals"] = diag;
  }
  j["seed"] = seed;
  j["config"] = {{"check_pairs", config.check_pairs},
                 {"fit_samples", config.fit_samples},
                 {"box", config.box},
                 {"tau_rel", config.tol.tau_rel}};
  j["timestamp"] = timestamp_utc();
  return j;
}

json report_degree(const DegreeResult& result, const Event& base, int subdivision,
                   uint64_t seed) {
  json j;
  j["verdict"] = result.quality ? "ok" : "low_quality";
  j["parameters"] = {{"degree", result.value},
                     {"quality", result.quality},
                     {"base", event_to_json(base)},
                     {"subdivision", subdivision}};
  j["residuals"] = {{"raw_degree", result.raw},
                    {"max_image_triangle_diameter", result.max_image_diameter}};
  j["witnesses"] = json::array();
  j["seed"] = seed;
  j["config"] = json::object();
  j["timestamp"] = timestamp_utc();
  return j;
}

}  // namespace conekit
