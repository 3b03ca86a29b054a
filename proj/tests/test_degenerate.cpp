#include <doctest.h>

#include <cmath>

#include "degenerate.hpp"
#include "minkowski.hpp"
#include "rng.hpp"
#include "test_support.hpp"

using namespace conekit;
using conekit::testing::check_close;
using conekit::testing::error_code_of;

namespace {

Patch make_patch(const Event& center, double radius, double amplitude) {
  double spatial[3] = {1.0, 0.0, 0.0};
  return {center, radius, Direction::from_spatial(spatial), amplitude};
}

}  // namespace

TEST_CASE("tent profile") {
  const Event c{0, 0, 0, 0};
  CHECK(bump(c, 1.0, c) == 1.0);
  CHECK(bump(c, 1.0, {0.5, 0, 0, 0}) == 0.5);
  CHECK(bump(c, 1.0, {1.0, 0, 0, 0}) == 0.0);
  CHECK(bump(c, 1.0, {3.0, 0, 0, 0}) == 0.0);
  CHECK(bump(c, 2.0, {0, 1, 0, 0}) == 0.5);
  CHECK(error_code_of([&] { bump(c, 0.0, c); }) == Errc::invalid_argument);
}

TEST_CASE("evaluation picks the first live patch") {
  DegenerateSpec spec;
  spec.vertex = Event{0, 0, 0, 1};
  spec.patches.push_back(make_patch({0, 0, 0, 0}, 1.0, 2.0));
  spec.patches.push_back(make_patch({0.5, 0, 0, 0}, 1.0, -3.0));

  check_close(eval(spec, {10, 0, 0, 0}), spec.vertex);
  check_close(eval(spec, {0, 0, 0, 0}), {2, 0, 0, 3});
  // Inside both balls; the first patch owns the point.
  check_close(eval(spec, {0.5, 0, 0, 0}), {1, 0, 0, 2});
  // Inside the second ball only.
  check_close(eval(spec, {1.25, 0, 0, 0}), {-0.75, 0, 0, 0.25});

  CHECK(error_code_of([&] { eval(spec, Event{0, 0, 1}); }) == Errc::dimension_mismatch);
  spec.patches[0].radius = -1.0;
  CHECK(error_code_of([&] { eval(spec, {0, 0, 0, 0}); }) == Errc::invalid_spec);
}

TEST_CASE("default builder layout") {
  const Event vertex{1, 2, 3, 4};
  const DegenerateSpec spec = build_default(5, 0.2, vertex, 11);
  REQUIRE(spec.patches.size() == 5);
  CHECK(spec.vertex == vertex);
  for (int j = 0; j < 5; ++j) {
    const Patch& p = spec.patches[static_cast<size_t>(j)];
    check_close(p.center, {double(j), 0, 0, 0});
    CHECK(p.radius == 0.2);
    CHECK(std::abs(p.amplitude) >= 0.5);
    CHECK(std::abs(p.amplitude) <= 2.0);
    CHECK(std::abs(p.direction.as_event().spatial_norm() - 1.0) <= 1e-12);
  }
  const DegenerateSpec again = build_default(5, 0.2, vertex, 11);
  for (size_t j = 0; j < 5; ++j) {
    CHECK(spec.patches[j].direction == again.patches[j].direction);
    CHECK(spec.patches[j].amplitude == again.patches[j].amplitude);
  }

  CHECK(error_code_of([&] { build_default(3, 0.25, vertex, 1); }) == Errc::epsilon_too_large);
  CHECK(error_code_of([&] { build_default(3, 0.4, vertex, 1); }) == Errc::epsilon_too_large);
  CHECK(error_code_of([&] { build_default(3, 0.0, vertex, 1); }) == Errc::epsilon_too_large);
  CHECK(error_code_of([&] { build_default(-1, 0.1, vertex, 1); }) == Errc::invalid_argument);
}

TEST_CASE("validator accepts the default layout") {
  for (uint64_t seed : {1ULL, 7ULL, 99ULL}) {
    const DegenerateSpec spec = build_default(6, 0.2, Event{0, 0, 0, 0}, seed);
    const ValidationReport report = validate_spec(spec, seed);
    CHECK(report.valid);
    CHECK(report.structure_ok);
    CHECK(!report.witness.has_value());
    CHECK(report.pair_checks.size() == 15);
    for (const PairCheck& pc : report.pair_checks) {
      CHECK(pc.separated);
      CHECK(pc.disjoint);
    }
    CHECK(report.brute_force_pairs == 10000);
    CHECK(report.brute_force_min_abs_q > 0.0);
  }
}

TEST_CASE("validator separates space-like and time-like offsets") {
  DegenerateSpec spec;
  spec.vertex = Event{0, 0, 0, 0};
  spec.patches.push_back(make_patch({0, 0, 0, 0}, 0.25, 1.0));
  spec.patches.push_back(make_patch({0, 0, 0, 5}, 0.25, 1.0));
  spec.patches.push_back(make_patch({5, 0, 0, 0}, 0.25, 1.0));
  const ValidationReport report = validate_spec(spec, 3);
  // Pairs (0,1) and (0,2) are fine; (1,2) has a near-null offset.
  REQUIRE(report.pair_checks.size() == 3);
  CHECK(report.pair_checks[0].separated);
  CHECK(report.pair_checks[1].separated);
  CHECK(!report.pair_checks[2].separated);
  CHECK(!report.valid);
  REQUIRE(report.witness.has_value());
  const WitnessPair& w = *report.witness;
  CHECK(std::abs(w.q_value) <= Tolerance{}.scale(w.r1 - w.r2));
  const bool in_12 = (w.r1 - spec.patches[1].center).euclidean_norm() < 0.25 &&
                     (w.r2 - spec.patches[2].center).euclidean_norm() < 0.25;
  const bool in_21 = (w.r1 - spec.patches[2].center).euclidean_norm() < 0.25 &&
                     (w.r2 - spec.patches[1].center).euclidean_norm() < 0.25;
  CHECK((in_12 || in_21));
}

TEST_CASE("validator finds a witness for oversized patches") {
  DegenerateSpec spec;
  spec.vertex = Event{0, 0, 0, 0};
  // The center offset is null, so coherent cross pairs are plentiful.
  spec.patches.push_back(make_patch({0, 0, 0, 0}, 0.45, 1.0));
  spec.patches.push_back(make_patch({1, 0, 0, 1}, 0.45, -1.0));
  const ValidationReport report = validate_spec(spec, 5);
  CHECK(!report.valid);
  REQUIRE(report.pair_checks.size() == 1);
  CHECK(!report.pair_checks[0].separated);
  REQUIRE(report.witness.has_value());
  const WitnessPair& w = *report.witness;
  CHECK(std::abs(w.q_value) <= Tolerance{}.scale(w.r1 - w.r2));
  CHECK((w.r1 - spec.patches[0].center).euclidean_norm() < 0.45);
  CHECK((w.r2 - spec.patches[1].center).euclidean_norm() < 0.45);
}

TEST_CASE("validator reports malformed specs without throwing") {
  DegenerateSpec spec;
  spec.vertex = Event{0, 0, 0, 0};
  double spatial[2] = {1.0, 0.0};
  spec.patches.push_back({Event{0, 0, 1}, 0.2, Direction::from_spatial(spatial), 1.0});
  const ValidationReport report = validate_spec(spec);
  CHECK(!report.valid);
  CHECK(!report.structure_ok);
  CHECK(!report.message.empty());
}

TEST_CASE("valid specs keep images of coherent pairs coherent") {
  Sampler s(606);
  const DegenerateSpec spec = build_default(8, 0.2, Event{0.5, -1, 0, 2}, 17);
  REQUIRE(validate_spec(spec).valid);
  for (int i = 0; i < 5000; ++i) {
    // Coherent input pair: a point plus a multiple of a null direction.
    const Event r1 = s.box_event(4, 6.0);
    const Event r2 = r1 + s.uniform(-4.0, 4.0) * s.direction(4).as_event();
    REQUIRE(is_coherent(r1, r2));
    const Event f1 = eval(spec, r1);
    const Event f2 = eval(spec, r2);
    CHECK(is_coherent(f1, f2));
    CHECK(is_coherent(f1, spec.vertex));
  }
}
