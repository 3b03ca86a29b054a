#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>

#include <json.hpp>

#include <conekit/conekit.h>

using nlohmann::json;

namespace {

// Owns an API-allocated string for the scope of one assertion block.
struct OwnedString {
  char* s = nullptr;
  ~OwnedString() { ck_string_free(s); }
  json parsed() const { return json::parse(std::string(s ? s : "")); }
};

struct OwnedMap {
  ck_map* m = nullptr;
  ~OwnedMap() { ck_map_free(m); }
};

ck_status load(const std::string& text, OwnedMap& map) {
  return ck_map_load_json(text.c_str(), &map.m);
}

}  // namespace

TEST_CASE("version and error strings") {
  REQUIRE(ck_version() != nullptr);
  CHECK(std::strcmp(ck_version(), "1.0.0") == 0);
  REQUIRE(ck_last_error() != nullptr);
}

TEST_CASE("quadratic form entry point") {
  const double r[4] = {1, 2, 3, 5};
  double q = 0.0;
  REQUIRE(ck_quadratic_form(r, 4, &q) == CK_OK);
  CHECK(q == 11.0);

  const double r3[3] = {0, 1, 1};
  REQUIRE(ck_quadratic_form(r3, 3, &q) == CK_OK);
  CHECK(q == 0.0);

  CHECK(ck_quadratic_form(r, 2, &q) == CK_EUNSUPPORTED);
  CHECK(ck_quadratic_form(nullptr, 4, &q) == CK_EINVAL);
  CHECK(std::string(ck_last_error()).size() > 0);
  REQUIRE(ck_quadratic_form(r, 4, &q) == CK_OK);
  CHECK(std::string(ck_last_error()).empty());
}

TEST_CASE("hermitian bridge entry points") {
  const double r[4] = {1, 2, 3, 5};
  double h[4] = {0, 0, 0, 0};
  REQUIRE(ck_event_to_herm(r, h) == CK_OK);
  CHECK(h[0] == 8.0);
  CHECK(h[1] == 2.0);
  CHECK(h[2] == 1.0);
  CHECK(h[3] == 2.0);

  double det = 0.0;
  REQUIRE(ck_herm_det(h, &det) == CK_OK);
  CHECK(det == 11.0);

  double back[4] = {0, 0, 0, 0};
  REQUIRE(ck_herm_to_event(h, back) == CK_OK);
  for (int i = 0; i < 4; ++i) CHECK(back[i] == r[i]);

  CHECK(ck_event_to_herm(nullptr, h) == CK_EINVAL);
  CHECK(ck_herm_det(h, nullptr) == CK_EINVAL);
}

TEST_CASE("map loading and evaluation") {
  OwnedMap identity;
  REQUIRE(load(R"({"kind": "affine", "dimension": 4,
                   "L": [1,0,0,0, 0,1,0,0, 0,0,1,0, 0,0,0,1],
                   "b": [0,0,0,0]})",
               identity) == CK_OK);
  CHECK(ck_map_dimension(identity.m) == 4);
  CHECK(std::string(ck_map_kind(identity.m)) == "affine");
  const double in[4] = {1.5, -2, 0.25, 4};
  double out[4] = {0, 0, 0, 0};
  REQUIRE(ck_map_eval(identity.m, in, 4, out) == CK_OK);
  for (int i = 0; i < 4; ++i) CHECK(out[i] == in[i]);
  CHECK(ck_map_eval(identity.m, in, 3, out) == CK_EINVAL);
  CHECK(ck_map_eval(identity.m, nullptr, 4, out) == CK_EINVAL);

  OwnedMap broken;
  CHECK(load("{ not json", broken) == CK_EPARSE);
  CHECK(load(R"({"kind": "mystery"})", broken) == CK_ESPEC);
  CHECK(ck_map_load_json(nullptr, nullptr) == CK_EINVAL);

  OwnedMap table;
  REQUIRE(load(R"({"kind": "table", "dimension": 4,
                   "rows": [{"in": [0,0,0,0], "out": [1,1,1,1]}]})",
               table) == CK_OK);
  const double hit[4] = {0, 0, 0, 0};
  REQUIRE(ck_map_eval(table.m, hit, 4, out) == CK_OK);
  CHECK(out[0] == 1.0);
  const double miss[4] = {0.5, 0, 0, 0};
  CHECK(ck_map_eval(table.m, miss, 4, out) == CK_EDOMAIN);
}

TEST_CASE("generators emit loadable specs") {
  OwnedString sim_json;
  REQUIRE(ck_gen_similarity(4, 42, &sim_json.s) == CK_OK);
  OwnedMap sim;
  REQUIRE(load(sim_json.s, sim) == CK_OK);
  CHECK(std::string(ck_map_kind(sim.m)) == "similarity");

  OwnedString again;
  REQUIRE(ck_gen_similarity(4, 42, &again.s) == CK_OK);
  CHECK(std::string(sim_json.s) == again.s);

  OwnedString deg_json;
  const double vertex[4] = {1, 0, -1, 2};
  REQUIRE(ck_gen_degenerate(5, 0.2, vertex, 4, 7, &deg_json.s) == CK_OK);
  OwnedMap deg;
  REQUIRE(load(deg_json.s, deg) == CK_OK);
  CHECK(std::string(ck_map_kind(deg.m)) == "degenerate");
  CHECK(deg_json.parsed().at("patches").size() == 5);

  OwnedString fat;
  CHECK(ck_gen_degenerate(5, 0.3, nullptr, 4, 7, &fat.s) == CK_EINVAL);
  CHECK(ck_gen_degenerate(5, 0.2, nullptr, 11, 7, &fat.s) == CK_EUNSUPPORTED);

  OwnedString table_json;
  REQUIRE(ck_gen_squaring_table(50, 10.0, 3, &table_json.s) == CK_OK);
  OwnedMap table;
  REQUIRE(load(table_json.s, table) == CK_OK);
  CHECK(std::string(ck_map_kind(table.m)) == "table");
  CHECK(table_json.parsed().at("rows").size() == 100);
  CHECK(ck_gen_squaring_table(0, 10.0, 3, &fat.s) == CK_EINVAL);
}

TEST_CASE("validation entry point") {
  OwnedString deg_json;
  REQUIRE(ck_gen_degenerate(4, 0.2, nullptr, 4, 11, &deg_json.s) == CK_OK);
  OwnedMap deg;
  REQUIRE(load(deg_json.s, deg) == CK_OK);
  int valid = 0;
  OwnedString report;
  REQUIRE(ck_validate(deg.m, 1, &valid, &report.s) == CK_OK);
  CHECK(valid == 1);
  CHECK(report.parsed().at("verdict") == "valid");

  OwnedMap overlap;
  REQUIRE(load(R"({"kind": "degenerate", "dimension": 4, "vertex": [0,0,0,0], "patches": [
    {"center": [0,0,0,0], "radius": 0.45, "direction": [1,0,0,1], "amplitude": 1},
    {"center": [1,0,0,1], "radius": 0.45, "direction": [0,1,0,1], "amplitude": -1}]})",
               overlap) == CK_OK);
  OwnedString report2;
  REQUIRE(ck_validate(overlap.m, 1, &valid, &report2.s) == CK_OK);
  CHECK(valid == 0);
  CHECK(report2.parsed().at("verdict") == "invalid");
  CHECK(report2.parsed().at("witnesses").size() == 1);

  OwnedMap sim;
  OwnedString sim_json;
  REQUIRE(ck_gen_similarity(4, 1, &sim_json.s) == CK_OK);
  REQUIRE(load(sim_json.s, sim) == CK_OK);
  OwnedString report3;
  REQUIRE(ck_validate(sim.m, 1, &valid, &report3.s) == CK_OK);
  CHECK(valid == 1);
  CHECK(report3.parsed().at("message").get<std::string>().find("schema") !=
        std::string::npos);
}

TEST_CASE("check entry point") {
  OwnedString sim_json;
  REQUIRE(ck_gen_similarity(4, 9, &sim_json.s) == CK_OK);
  OwnedMap sim;
  REQUIRE(load(sim_json.s, sim) == CK_OK);
  int passed = 0;
  OwnedString report;
  REQUIRE(ck_check(sim.m, 5, 2000, 1e-9, &passed, &report.s) == CK_OK);
  CHECK(passed == 1);
  CHECK(report.parsed().at("verdict") == "pass");

  OwnedString table_json;
  REQUIRE(ck_gen_squaring_table(100, 10.0, 5, &table_json.s) == CK_OK);
  OwnedMap table;
  REQUIRE(load(table_json.s, table) == CK_OK);
  OwnedString report2;
  REQUIRE(ck_check(table.m, 5, 2000, 1e-9, &passed, &report2.s) == CK_OK);
  CHECK(passed == 0);
  const json j = report2.parsed();
  CHECK(j.at("verdict") == "violation");
  REQUIRE(j.at("witnesses").size() == 1);
  // The witness must be re-verifiable through the map itself.
  const json w = j.at("witnesses")[0];
  double out1[4];
  double out2[4];
  const double r1[4] = {w.at("r1")[0], w.at("r1")[1], w.at("r1")[2], w.at("r1")[3]};
  const double r2[4] = {w.at("r2")[0], w.at("r2")[1], w.at("r2")[2], w.at("r2")[3]};
  REQUIRE(ck_map_eval(table.m, r1, 4, out1) == CK_OK);
  REQUIRE(ck_map_eval(table.m, r2, 4, out2) == CK_OK);
  for (int i = 0; i < 4; ++i) {
    CHECK(out1[i] == w.at("out1")[i].get<double>());
    CHECK(out2[i] == w.at("out2")[i].get<double>());
  }

  CHECK(ck_check(sim.m, 5, 0, 1e-9, &passed, &report.s) == CK_EINVAL);
  CHECK(ck_check(sim.m, 5, 100, -1.0, &passed, &report.s) == CK_EINVAL);
}

TEST_CASE("classification entry point") {
  ck_verdict verdict;

  OwnedString sim_json;
  REQUIRE(ck_gen_similarity(4, 31, &sim_json.s) == CK_OK);
  OwnedMap sim;
  REQUIRE(load(sim_json.s, sim) == CK_OK);
  OwnedString report;
  REQUIRE(ck_classify(sim.m, 5, 10000, 64, &verdict, &report.s) == CK_OK);
  CHECK(verdict == CK_VERDICT_SIMILARITY);
  CHECK(report.parsed().at("verdict") == "similarity");

  OwnedString deg_json;
  REQUIRE(ck_gen_degenerate(3, 0.2, nullptr, 4, 13, &deg_json.s) == CK_OK);
  OwnedMap deg;
  REQUIRE(load(deg_json.s, deg) == CK_OK);
  OwnedString report2;
  REQUIRE(ck_classify(deg.m, 5, 10000, 64, &verdict, &report2.s) == CK_OK);
  CHECK(verdict == CK_VERDICT_DEGENERATE);
  const json vertex = report2.parsed().at("parameters").at("vertex");
  for (int i = 0; i < 4; ++i) CHECK(std::abs(vertex[i].get<double>()) <= 1e-6);

  OwnedString table_json;
  REQUIRE(ck_gen_squaring_table(100, 10.0, 5, &table_json.s) == CK_OK);
  OwnedMap table;
  REQUIRE(load(table_json.s, table) == CK_OK);
  OwnedString report3;
  REQUIRE(ck_classify(table.m, 5, 10000, 64, &verdict, &report3.s) == CK_OK);
  CHECK(verdict == CK_VERDICT_VIOLATOR);

  CHECK(ck_classify(sim.m, 5, 5000, 64, &verdict, &report.s) == CK_EINVAL);
}

TEST_CASE("degree entry point") {
  OwnedMap identity;
  REQUIRE(load(R"({"kind": "affine", "dimension": 4,
                   "L": [1,0,0,0, 0,1,0,0, 0,0,1,0, 0,0,0,1],
                   "b": [0,0,0,0]})",
               identity) == CK_OK);
  const double base[4] = {0, 0, 0, 0};
  int value = 0;
  int quality = 0;
  OwnedString report;
  REQUIRE(ck_degree(identity.m, base, 4, 2, &value, &quality, &report.s) == CK_OK);
  CHECK(value == 1);
  CHECK(quality == 1);
  CHECK(report.parsed().at("parameters").at("degree") == 1);

  OwnedString deg_json;
  REQUIRE(ck_gen_degenerate(2, 0.2, nullptr, 4, 3, &deg_json.s) == CK_OK);
  OwnedMap deg;
  REQUIRE(load(deg_json.s, deg) == CK_OK);
  const double far_base[4] = {50, 0, 0, 0};
  OwnedString report2;
  CHECK(ck_degree(deg.m, far_base, 4, 2, &value, &quality, &report2.s) == CK_ECOLLAPSE);
}
