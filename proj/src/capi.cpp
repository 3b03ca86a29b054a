#include "conekit/conekit.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>

#include "analyzer.hpp"
#include "degenerate.hpp"
#include "hermitian.hpp"
#include "mapspec.hpp"
#include "minkowski.hpp"
#include "report.hpp"
#include "rng.hpp"
#include "transforms.hpp"

using namespace conekit;

struct ck_map {
  MapSpec spec;
  BlackBoxMap box;
  std::string kind;
};

namespace {

thread_local std::string last_error;

ck_status status_of(Errc code) {
  switch (code) {
    case Errc::parse_error:
      return CK_EPARSE;
    case Errc::invalid_spec:
      return CK_ESPEC;
    case Errc::domain_error:
      return CK_EDOMAIN;
    case Errc::no_convergence:
      return CK_ENOCONV;
    case Errc::line_collapse:
      return CK_ECOLLAPSE;
    case Errc::unsupported_dimension:
      return CK_EUNSUPPORTED;
    default:
      return CK_EINVAL;
  }
}

// Runs the body, translating exceptions into status codes.
template <typename Fn>
ck_status guarded(Fn&& fn) {
  try {
    fn();
    last_error.clear();
    return CK_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    last_error = e.what();
    return CK_EFAIL;
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(bool cond, const char* message) {
  if (!cond) fail(Errc::invalid_argument, message);
}

Event event_from_buffer(const double* data, size_t len) {
  require(data != nullptr, "coordinate buffer is null");
  if (!dimension_supported(static_cast<int>(len))) {
    fail(Errc::unsupported_dimension, "coordinate count must be between 3 and 6");
  }
  return Event::from_span({data, len});
}

}  // namespace

extern "C" {

const char* ck_version(void) { return "1.0.0"; }

const char* ck_last_error(void) { return last_error.c_str(); }

void ck_string_free(char* s) { std::free(s); }

ck_status ck_map_load_json(const char* json_text, ck_map** out_map) {
  return guarded([&] {
    require(json_text != nullptr && out_map != nullptr, "null argument");
    auto handle = std::make_unique<ck_map>();
    handle->spec = load_mapspec_text(json_text);
    handle->box = to_blackbox(handle->spec);
    handle->kind = kind_of(handle->spec);
    *out_map = handle.release();
  });
}

void ck_map_free(ck_map* map) { delete map; }

int ck_map_dimension(const ck_map* map) { return map ? map->box.dim : 0; }

const char* ck_map_kind(const ck_map* map) { return map ? map->kind.c_str() : ""; }

ck_status ck_map_eval(const ck_map* map, const double* in, size_t len, double* out) {
  return guarded([&] {
    require(map != nullptr && out != nullptr, "null argument");
    const Event r = event_from_buffer(in, len);
    require(r.dim() == map->box.dim, "input dimension differs from the map dimension");
    const Event y = map->box(r);
    for (int i = 0; i < y.dim(); ++i) out[i] = y[i];
  });
}

ck_status ck_gen_similarity(int dimension, uint64_t seed, char** out_json) {
  return guarded([&] {
    require(out_json != nullptr, "null argument");
    const MapSpec spec = random_similarity(dimension, seed);
    *out_json = copy_string(save_mapspec(spec).dump(2));
  });
}

ck_status ck_gen_degenerate(int patches, double epsilon, const double* vertex, int dimension,
                            uint64_t seed, char** out_json) {
  return guarded([&] {
    require(out_json != nullptr, "null argument");
    if (!dimension_supported(dimension)) {
      fail(Errc::unsupported_dimension, "dimension must be between 3 and 6");
    }
    const Event v = vertex ? event_from_buffer(vertex, static_cast<size_t>(dimension))
                           : Event(dimension);
    const MapSpec spec = build_default(patches, epsilon, v, seed);
    *out_json = copy_string(save_mapspec(spec).dump(2));
  });
}

ck_status ck_gen_squaring_table(int pairs, double scale, uint64_t seed, char** out_json) {
  return guarded([&] {
    require(out_json != nullptr, "null argument");
    require(pairs > 0, "pair count must be positive");
    require(scale > 0.0, "scale must be positive");
    TableSpec table;
    table.dim = 4;
    auto squaring = [](const Event& r) {
      Event out(r.dim());
      out[0] = quadratic_form(r);
      return out;
    };
    for (int i = 0; i < pairs; ++i) {
      Sampler s(derive_seed(seed, static_cast<uint64_t>(i)));
      const auto [r1, r2] = sample_coherent_pair(s, 4, scale);
      table.rows.emplace_back(r1, squaring(r1));
      table.rows.emplace_back(r2, squaring(r2));
    }
    *out_json = copy_string(save_mapspec(MapSpec{std::move(table)}).dump(2));
  });
}

ck_status ck_validate(const ck_map* map, uint64_t seed, int* valid, char** report_json) {
  return guarded([&] {
    require(map != nullptr && valid != nullptr && report_json != nullptr, "null argument");
    if (const auto* spec = std::get_if<DegenerateSpec>(&map->spec)) {
      const ValidationReport report = validate_spec(*spec, seed);
      *valid = report.valid ? 1 : 0;
      *report_json = copy_string(report_validation(report, seed).dump(2));
    } else {
      // Schema validity was established on load; nothing else to check.
      nlohmann::json j;
      j["verdict"] = "valid";
      j["parameters"] = {{"kind", map->kind}};
      j["residuals"] = nlohmann::json::object();
      j["witnesses"] = nlohmann::json::array();
      j["message"] = "kind has no separation conditions; schema check only";
      j["seed"] = seed;
      j["config"] = nlohmann::json::object();
      j["timestamp"] = timestamp_utc();
      *valid = 1;
      *report_json = copy_string(j.dump(2));
    }
  });
}

ck_status ck_check(const ck_map* map, uint64_t seed, int pairs, double tau_rel, int* passed,
                   char** report_json) {
  return guarded([&] {
    require(map != nullptr && passed != nullptr && report_json != nullptr, "null argument");
    require(tau_rel > 0.0, "tolerance must be positive");
    Tolerance tol{tau_rel};
    const CheckReport report = check_coherency_preservation(map->box, seed, pairs, tol);
    *passed = report.passed ? 1 : 0;
    *report_json = copy_string(report_check(report, seed, pairs, tau_rel).dump(2));
  });
}

ck_status ck_classify(const ck_map* map, uint64_t seed, int check_pairs, int fit_samples,
                      ck_verdict* verdict, char** report_json) {
  return guarded([&] {
    require(map != nullptr && verdict != nullptr && report_json != nullptr, "null argument");
    ClassifyConfig config;
    if (check_pairs > 0) config.check_pairs = check_pairs;
    if (fit_samples > 0) config.fit_samples = fit_samples;
    const Classification result = classify(map->box, seed, config);
    if (std::holds_alternative<SimilarityVerdict>(result)) {
      *verdict = CK_VERDICT_SIMILARITY;
    } else if (std::holds_alternative<DegenerateVerdict>(result)) {
      *verdict = CK_VERDICT_DEGENERATE;
    } else if (std::holds_alternative<ViolatorVerdict>(result)) {
      *verdict = CK_VERDICT_VIOLATOR;
    } else {
      *verdict = CK_VERDICT_INCONCLUSIVE;
    }
    *report_json = copy_string(report_classification(result, seed, config).dump(2));
  });
}

ck_status ck_degree(const ck_map* map, const double* base, size_t base_len, int subdivision,
                    int* degree_out, int* quality, char** report_json) {
  return guarded([&] {
    require(map != nullptr && degree_out != nullptr && quality != nullptr &&
                report_json != nullptr,
            "null argument");
    const Event a = event_from_buffer(base, base_len);
    require(a.dim() == map->box.dim, "base dimension differs from the map dimension");
    const SphereMesh mesh = SphereMesh::icosphere(subdivision);
    const DegreeResult result = degree(map->box, a, mesh);
    *degree_out = result.value;
    *quality = result.quality ? 1 : 0;
    *report_json = copy_string(report_degree(result, a, subdivision, 0).dump(2));
  });
}

ck_status ck_event_to_herm(const double event[4], double herm[4]) {
  return guarded([&] {
    require(event != nullptr && herm != nullptr, "null argument");
    const Herm2 h = event_to_herm(Event::from_span({event, 4}));
    herm[0] = h.d1;
    herm[1] = h.d2;
    herm[2] = h.off_re;
    herm[3] = h.off_im;
  });
}

ck_status ck_herm_to_event(const double herm[4], double event[4]) {
  return guarded([&] {
    require(event != nullptr && herm != nullptr, "null argument");
    const Event r = herm_to_event(Herm2{herm[0], herm[1], herm[2], herm[3]});
    for (int i = 0; i < 4; ++i) event[i] = r[i];
  });
}

ck_status ck_herm_det(const double herm[4], double* out) {
  return guarded([&] {
    require(herm != nullptr && out != nullptr, "null argument");
    *out = Herm2{herm[0], herm[1], herm[2], herm[3]}.det();
  });
}

ck_status ck_quadratic_form(const double* coords, size_t len, double* out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = quadratic_form(event_from_buffer(coords, len));
  });
}

}  // extern "C"
