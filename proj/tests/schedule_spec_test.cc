// Copyright 2026 The Patrol Game Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "patrol/schedule_spec.h"

#include "doctest.h"
#include "patrol/errors.h"

namespace patrol {
namespace {

using nlohmann::json;

TEST_CASE("optimal spec samples like sample_optimal") {
  const ScheduleGenerator g = parse_schedule_spec(
      R"({"schema_version": 1, "kind": "optimal", "lambda": 1.0, "t": 3.2})");
  CHECK(g.kind() == GeneratorKind::kOptimal);
  Rng a(5), b(5);
  const ScheduleRealization from_spec = g.sample(50.0, a);
  const ScheduleRealization direct =
      sample_optimal(GameParams(1.0, 3.2, 1.0), 50.0 + g.max_lap_time(), b);
  REQUIRE(from_spec.events().size() == direct.events().size());
  for (std::size_t i = 0; i < direct.events().size(); ++i) {
    CHECK(from_spec.events()[i].dispatch_time == direct.events()[i].dispatch_time);
    CHECK(from_spec.events()[i].tag == direct.events()[i].tag);
  }
}

TEST_CASE("specs above the rate cap are rejected") {
  CHECK_THROWS_AS(parse_schedule_spec(
                      R"({"kind": "poisson", "lambda": 1.0, "dispatch_rate": 2.0})"),
                  RateCapViolation);
  CHECK_THROWS_AS(parse_schedule_spec(R"({"kind": "pattern", "lambda": 1.0,
      "pattern": {"period": 1.0, "events": [{"offset": 0.0}, {"offset": 0.5}]}})"),
                  RateCapViolation);
  CHECK_NOTHROW(parse_schedule_spec(R"({"kind": "pattern", "lambda": 2.0,
      "pattern": {"period": 1.0, "events": [{"offset": 0.0}, {"offset": 0.5}]}})"));
}

TEST_CASE("mixed directions and piecewise speeds are accepted") {
  const ScheduleGenerator g = parse_schedule_spec(R"({
      "kind": "optimal", "lambda": 1.0, "t": 3.2,
      "counterclockwise_fraction": 0.5,
      "speed": {"kind": "random-piecewise", "segments": 3, "min": 0.5, "max": 2.0}})");
  Rng rng(3);
  const double horizon = 1e4;
  const ScheduleRealization full = g.sample(horizon, rng);
  int ccw = 0;
  std::vector<DispatchEvent> events;
  for (const auto& e : full.events()) {
    ccw += e.direction == Direction::kCounterclockwise;
    if (e.dispatch_time < horizon) events.push_back(e);
  }
  CHECK(ccw > 0);
  CHECK(ccw < static_cast<int>(full.events().size()));
  const ScheduleRealization s(horizon, events, full.max_lap_time());
  const RateCapReport r = validate_rate_cap(s, 1.0, PerimeterPoint(0.2), 0.02);
  CHECK(r.pass_rate == r.dispatch_rate);
  CHECK_FALSE(r.violation);

  const ScheduleGenerator fixed = parse_schedule_spec(R"({
      "kind": "deterministic", "lambda": 1.0,
      "speed": {"kind": "piecewise",
                "segments": [{"fraction": 0.5, "speed": 0.5},
                             {"fraction": 0.5, "speed": 1.0}]}})");
  CHECK(fixed.max_lap_time() == doctest::Approx(1.5));
}

TEST_CASE("malformed specs") {
  CHECK_THROWS_AS(parse_schedule_spec("{not json"), ParseError);
  CHECK_THROWS_AS(parse_schedule_spec(R"({"kind": "optimal", "lambda": 1.0})"),
                  ParseError);
  CHECK_THROWS_AS(
      parse_schedule_spec(R"({"kind": "poisson", "lambda": 1.0, "colour": "red"})"),
      ParseError);
  CHECK_THROWS_AS(parse_schedule_spec(R"({"kind": "spiral", "lambda": 1.0})"),
                  ParseError);
  CHECK_THROWS_AS(parse_schedule_spec(R"({"kind": "poisson", "lambda": 1.0,
      "speed": {"kind": "piecewise",
                "segments": [{"fraction": 0.5, "speed": 1.0},
                             {"fraction": 0.5, "speed": -1.0}]}})"),
                  ValidationError);
  CHECK_THROWS_AS(parse_schedule_spec(R"({"kind": "poisson", "lambda": 1.0,
      "schema_version": 7})"),
                  ParseError);
}

TEST_CASE("to_json round-trips through the loader") {
  const std::vector<std::string> docs{
      R"({"kind": "optimal", "lambda": 1.0, "t": 3.2})",
      R"({"kind": "uniform-offset", "lambda": 2.0, "dispatch_rate": 1.5,
          "counterclockwise_fraction": 1.0})",
      R"({"kind": "pattern", "lambda": 1.0,
          "pattern": {"period": 2.0, "events": [
            {"offset": 0.25, "direction": "ccw",
             "speed": {"kind": "piecewise",
                       "segments": [{"fraction": 0.25, "speed": 2.0},
                                    {"fraction": 0.75, "speed": 0.5}]}},
            {"offset": 1.0}]}})"};
  for (const auto& doc : docs) {
    const ScheduleGenerator g = parse_schedule_spec(doc);
    const ScheduleGenerator again = load_schedule_spec(to_json(g));
    CHECK(to_json(again) == to_json(g));
    Rng a(9), b(9);
    const auto s1 = g.sample(30.0, a);
    const auto s2 = again.sample(30.0, b);
    REQUIRE(s1.events().size() == s2.events().size());
    for (std::size_t i = 0; i < s1.events().size(); ++i) {
      CHECK(arrival_time(s1.events()[i], PerimeterPoint(0.3)) ==
            arrival_time(s2.events()[i], PerimeterPoint(0.3)));
    }
  }
}

}  // namespace
}  // namespace patrol
