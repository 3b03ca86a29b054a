#include <doctest.h>

#include <cmath>
#include <string>
#include <variant>

#include <json.hpp>

#include "mapspec.hpp"
#include "report.hpp"
#include "rng.hpp"
#include "test_support.hpp"

using namespace conekit;
using conekit::testing::check_close;
using conekit::testing::error_code_of;
using nlohmann::json;

TEST_CASE("similarity specs round trip through json") {
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    const PoincareSimilarity ps = random_similarity(4, seed);
    const MapSpec spec = ps;
    const json j = save_mapspec(spec);
    CHECK(j.at("kind") == "similarity");
    CHECK(j.at("dimension") == 4);
    const MapSpec back = load_mapspec_text(j.dump());
    REQUIRE(std::holds_alternative<PoincareSimilarity>(back));
    const auto& qs = std::get<PoincareSimilarity>(back);
    CHECK(qs.k == ps.k);
    CHECK((qs.q.entries() - ps.q.entries()).norm() == 0.0);
    CHECK(qs.a == ps.a);
  }
}

TEST_CASE("affine and table specs round trip through json") {
  AffineMap am;
  am.l = MatrixNd::Identity(4, 4);
  am.l(0, 2) = -0.125;
  am.b = Event{1, 0.5, -2, 3};
  const MapSpec affine_spec = am;
  const MapSpec affine_back = load_mapspec_text(save_mapspec(affine_spec).dump());
  REQUIRE(std::holds_alternative<AffineMap>(affine_back));
  CHECK((std::get<AffineMap>(affine_back).l - am.l).norm() == 0.0);
  CHECK(std::get<AffineMap>(affine_back).b == am.b);
  CHECK(kind_of(affine_spec) == "affine");
  CHECK(dim_of(affine_spec) == 4);

  TableSpec table;
  table.dim = 4;
  Sampler s(12);
  for (int i = 0; i < 10; ++i) {
    table.rows.emplace_back(s.box_event(4, 10.0), s.box_event(4, 10.0));
  }
  const MapSpec table_spec = table;
  const MapSpec table_back = load_mapspec_text(save_mapspec(table_spec).dump());
  REQUIRE(std::holds_alternative<TableSpec>(table_back));
  const auto& tb = std::get<TableSpec>(table_back);
  REQUIRE(tb.rows.size() == 10);
  for (size_t i = 0; i < 10; ++i) {
    CHECK(tb.rows[i].first == table.rows[i].first);
    CHECK(tb.rows[i].second == table.rows[i].second);
  }
}

TEST_CASE("degenerate specs round trip through json") {
  const DegenerateSpec spec = build_default(4, 0.2, Event{0, 1, 0, -2}, 5);
  const MapSpec back = load_mapspec_text(save_mapspec(spec).dump());
  REQUIRE(std::holds_alternative<DegenerateSpec>(back));
  const auto& ds = std::get<DegenerateSpec>(back);
  CHECK(ds.vertex == spec.vertex);
  REQUIRE(ds.patches.size() == spec.patches.size());
  for (size_t i = 0; i < spec.patches.size(); ++i) {
    CHECK(ds.patches[i].center == spec.patches[i].center);
    CHECK(ds.patches[i].radius == spec.patches[i].radius);
    CHECK(ds.patches[i].amplitude == spec.patches[i].amplitude);
    check_close(ds.patches[i].direction.as_event(), spec.patches[i].direction.as_event());
  }
}

TEST_CASE("loader rejects malformed documents") {
  CHECK(error_code_of([] { load_mapspec_text("not json at all"); }) == Errc::parse_error);
  CHECK(error_code_of([] { load_mapspec_text("[1, 2, 3]"); }) == Errc::invalid_spec);
  CHECK(error_code_of([] { load_mapspec_text(R"({"kind": "wavelet"})"); }) ==
        Errc::invalid_spec);
  CHECK(error_code_of([] { load_mapspec_text(R"({"kind": "affine", "dimension": 9})"); }) ==
        Errc::invalid_spec);
  CHECK(error_code_of([] { load_mapspec_text(R"({"kind": "affine", "b": [0,0,0,0]})"); }) ==
        Errc::invalid_spec);
  CHECK(error_code_of([] {
          load_mapspec_text(R"({"kind": "similarity", "k": -1, "Q": [], "a": []})");
        }) == Errc::invalid_spec);
  CHECK(error_code_of([] { load_mapspec_text(R"({"kind": "table", "rows": []})"); }) ==
        Errc::invalid_spec);
  // k = 2 with the identity fails the Lorentz check.
  const std::string scaled = R"({"kind": "similarity", "k": 1,
    "Q": [2,0,0,0, 0,2,0,0, 0,0,2,0, 0,0,0,2], "a": [0,0,0,0]})";
  CHECK(error_code_of([&] { load_mapspec_text(scaled); }) == Errc::invalid_spec);
  // Degenerate patch direction must sit on the cone section.
  const std::string tilted = R"({"kind": "degenerate", "vertex": [0,0,0,0], "patches":
    [{"center": [0,0,0,0], "radius": 0.2, "direction": [1,0,0,2], "amplitude": 1}]})";
  CHECK(error_code_of([&] { load_mapspec_text(tilted); }) == Errc::invalid_spec);
}

TEST_CASE("blackbox closures evaluate their spec") {
  const PoincareSimilarity ps = random_similarity(4, 3);
  const BlackBoxMap sim = to_blackbox(ps);
  CHECK(sim.kind == "similarity");
  CHECK(sim.dim == 4);
  Sampler s(1);
  for (int i = 0; i < 50; ++i) {
    const Event r = s.box_event(4, 10.0);
    check_close(sim(r), apply_similarity(ps, r));
  }

  TableSpec table;
  table.dim = 4;
  const Event in1{0.1, 0.2, 0.3, 0.4};
  const Event out1{9, 8, 7, 6};
  table.rows.emplace_back(in1, out1);
  const BlackBoxMap tb = to_blackbox(table);
  REQUIRE(tb.table);
  CHECK(tb.table->size() == 1);
  CHECK(tb(in1) == out1);
  CHECK(error_code_of([&] { tb(Event{0, 0, 0, 0}); }) == Errc::domain_error);
  // Lookup is exact on bits, so the nearest representable neighbor misses.
  Event nudged = in1;
  nudged[0] = std::nextafter(nudged[0], 1.0);
  CHECK(error_code_of([&] { tb(nudged); }) == Errc::domain_error);
}

TEST_CASE("event json helpers") {
  const Event e{1, 2, 3, 4};
  const json j = event_to_json(e);
  CHECK(j.is_array());
  CHECK(event_from_json(j, 4) == e);
  CHECK(error_code_of([&] { event_from_json(j, 5); }) == Errc::invalid_spec);
  CHECK(error_code_of([] { event_from_json(json::object(), 4); }) == Errc::invalid_spec);
}

TEST_CASE("report documents carry the shared envelope") {
  CheckReport check;
  check.passed = false;
  check.max_normalized = 42.0;
  check.pairs = 10;
  check.worst = CheckWitness{Event{1, 0, 0, 1}, Event{0, 0, 0, 0}, Event{2, 0, 0, 2},
                             Event{0, 0, 0, 0}, 0.0, 0.5};
  const json jc = report_check(check, 7, 10, 1e-9);
  CHECK(jc.at("verdict") == "violation");
  CHECK(jc.at("seed") == 7);
  CHECK(jc.at("witnesses").size() == 1);
  CHECK(jc.at("residuals").at("max_normalized_violation") == 42.0);
  CHECK(jc.contains("timestamp"));
  CHECK(jc.contains("config"));

  const DegenerateSpec spec = build_default(3, 0.2, Event{0, 0, 0, 0}, 2);
  const json jv = report_validation(validate_spec(spec), 3);
  CHECK(jv.at("verdict") == "valid");
  CHECK(jv.at("parameters").at("pair_checks").size() == 3);

  const Classification sim = SimilarityVerdict{PoincareSimilarity::identity(4), 1e-14};
  const json js = report_classification(sim, 5, ClassifyConfig{});
  CHECK(js.at("verdict") == "similarity");
  CHECK(js.at("parameters").at("k") == 1.0);
  CHECK(js.at("parameters").at("Q").size() == 16);

  const Classification inc = InconclusiveVerdict{0.5, 0.25, 3, 100, -1};
  const json ji = report_classification(inc, 5, ClassifyConfig{});
  CHECK(ji.at("verdict") == "inconclusive");
  CHECK(ji.at("residuals").at("collapsed_lines") == 3);
  CHECK(ji.at("residuals").at("degree_attempt") == -1);

  DegreeResult dr;
  dr.value = 1;
  dr.quality = true;
  dr.raw = 0.999;
  const json jd = report_degree(dr, Event{0, 0, 0, 0}, 5, 11);
  CHECK(jd.at("verdict") == "ok");
  CHECK(jd.at("parameters").at("degree") == 1);
  CHECK(jd.at("residuals").at("raw_degree") == 0.999);
}
