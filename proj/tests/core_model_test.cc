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

#include "patrol/core_model.h"

#include <sstream>

#include "doctest.h"
#include "patrol/errors.h"
#include "patrol/rng.h"
#include "patrol/schedules.h"

namespace patrol {
namespace {

DispatchEvent event(double time, Direction d,
                    SpeedProfile speed = SpeedProfile::constant()) {
  DispatchEvent e;
  e.dispatch_time = time;
  e.direction = d;
  e.speed = std::move(speed);
  return e;
}

SpeedProfile random_profile(Rng& rng) {
  const int n = 1 + static_cast<int>(rng.uniform() * 4);
  std::vector<SpeedProfile::Segment> segs;
  double used = 0.0;
  for (int i = 0; i < n; ++i) {
    const double f = i + 1 == n ? 1.0 - used : (1.0 - used) * rng.uniform(0.1, 0.9);
    used += f;
    segs.push_back({f, rng.uniform(0.2, 3.0)});
  }
  return SpeedProfile(segs);
}

TEST_CASE("GameParams derives m and r from lambda * t") {
  GameParams g(1.0, 3.2, 0.5);
  CHECK(g.m() == 3);
  CHECK(g.r() == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(g.delta() == doctest::Approx(0.8));
  CHECK_FALSE(g.integer_load());

  GameParams integer(2.0, 1.5, 0.5);
  CHECK(integer.m() == 3);
  CHECK(integer.r() == 0.0);
  CHECK(integer.integer_load());

  // 0.1 * 30 = 3.0000000000000004 in binary; the guard treats it as 3.
  GameParams guarded(0.1, 30.0, 0.5);
  CHECK(guarded.m() == 3);
  CHECK(guarded.r() == 0.0);

  GameParams small(1.0, 0.4, 1.0);
  CHECK(small.m() == 0);
  CHECK(small.r() == doctest::Approx(0.4));
}

TEST_CASE("GameParams rejects invalid inputs") {
  CHECK_THROWS_AS(GameParams(0.0, 1.0, 0.5), ValidationError);
  CHECK_THROWS_AS(GameParams(1.0, -1.0, 0.5), ValidationError);
  CHECK_THROWS_AS(GameParams(1.0, 1.0, 0.0), ValidationError);
  CHECK_THROWS_AS(GameParams(1.0, 1.0, 1.5), ValidationError);
  CHECK_NOTHROW(GameParams(1.0, 1.0, 1.0));
  CHECK_THROWS_AS(PerimeterPoint(1.0), ValidationError);
  CHECK_THROWS_AS(PerimeterPoint(-0.1), ValidationError);
}

TEST_CASE("SpeedProfile validation") {
  CHECK_THROWS_AS(SpeedProfile({{0.5, 1.0}, {0.5, 0.0}}), ValidationError);
  CHECK_THROWS_AS(SpeedProfile({{0.5, 1.0}, {0.4, 1.0}}), ValidationError);
  CHECK_THROWS_AS(SpeedProfile(std::vector<SpeedProfile::Segment>{}), ValidationError);
  CHECK_THROWS_AS(SpeedProfile::constant(-1.0), ValidationError);
  SpeedProfile p({{0.5, 0.5}, {0.5, 1.0}});
  CHECK(p.lap_time() == doctest::Approx(1.5));
  CHECK(SpeedProfile({{1.0, 2.0}}).is_constant());
}

TEST_CASE("arrival_time examples") {
  const PerimeterPoint x(0.25);
  CHECK(arrival_time(event(2.0, Direction::kClockwise), x) == 2.25);
  CHECK(arrival_time(event(2.0, Direction::kCounterclockwise), x) == 2.75);
  const SpeedProfile slow_then_fast({{0.5, 0.5}, {0.5, 1.0}});
  CHECK(arrival_time(event(0.0, Direction::kClockwise, slow_then_fast),
                     PerimeterPoint(0.75)) == doctest::Approx(1.25));
  // The base is passed at dispatch in either direction.
  CHECK(arrival_time(event(1.5, Direction::kCounterclockwise), PerimeterPoint(0.0)) ==
        1.5);
}

TEST_CASE("arrival time is strictly monotone along the direction of travel") {
  Rng rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    const SpeedProfile profile = random_profile(rng);
    const double d = rng.uniform(0.0, 100.0);
    double a = rng.uniform(0.001, 0.998);
    double b = rng.uniform(a + 1e-4, 0.999);
    const auto cw = event(d, Direction::kClockwise, profile);
    const auto ccw = event(d, Direction::kCounterclockwise, profile);
    CHECK(arrival_time(cw, PerimeterPoint(a)) < arrival_time(cw, PerimeterPoint(b)));
    // Counterclockwise patrollers reach larger x first.
    CHECK(arrival_time(ccw, PerimeterPoint(b)) < arrival_time(ccw, PerimeterPoint(a)));
    CHECK(arrival_time(cw, PerimeterPoint(b)) <= d + profile.lap_time() + 1e-12);
  }
}

TEST_CASE("count_passes on simple schedules") {
  const ScheduleRealization empty(10.0, {});
  CHECK(count_passes(empty, AttackWindow(PerimeterPoint(0.3), 1.0, 2.0)) == 0);

  // Lattice 1/λ with λt = 3: every window sees exactly three passes.
  const ScheduleRealization lattice = sample_deterministic(1.0, 100.0);
  Rng rng(3);
  for (int i = 0; i < 1000; ++i) {
    const PerimeterPoint x(rng.uniform());
    const double s = rng.uniform(0.0, 90.0);
    CHECK(count_passes(lattice, AttackWindow(x, s, 3.0)) == 3);
  }
}

TEST_CASE("count_passes counts the start and not the end") {
  std::vector<DispatchEvent> events{event(1.0, Direction::kClockwise),
                                    event(2.0, Direction::kClockwise)};
  const ScheduleRealization s(10.0, events);
  const PerimeterPoint base(0.0);
  CHECK(count_passes(s, AttackWindow(base, 1.0, 1.0)) == 1);
  CHECK(count_passes(s, AttackWindow(base, 1.0, 1.0 + 1e-12)) == 2);
  CHECK(count_passes(s, AttackWindow(base, 0.5, 0.5)) == 0);
}

TEST_CASE("count_passes on the blue/red schedule sees m plus the red slot") {
  const GameParams g(1.0, 3.2, 0.5);
  Rng rng(11);
  int with_red = 0;
  int without_red = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const ScheduleRealization s = sample_optimal(g, 60.0, rng);
    const double start = rng.uniform(5.0, 50.0);
    // The red slot inside [start, start + t) is the single multiple of t there.
    const double slot = std::ceil(start / 3.2) * 3.2;
    bool red = false;
    for (const auto& e : s.events()) {
      if (e.tag == Tag::kRed && std::abs(e.dispatch_time - slot) < 1e-9) red = true;
    }
    const int n = count_passes(s, AttackWindow(PerimeterPoint(0.0), start, 3.2));
    CHECK(n == (red ? 4 : 3));
    (red ? with_red : without_red)++;
  }
  CHECK(with_red > 0);
  CHECK(without_red > 0);
}

TEST_CASE("count_passes rejects windows past the safe horizon") {
  const ScheduleRealization s = sample_deterministic(1.0, 10.0);
  CHECK(s.safe_horizon() == 9.0);
  CHECK_NOTHROW(count_passes(s, AttackWindow(PerimeterPoint(0.5), 5.0, 4.0)));
  CHECK_THROWS_AS(count_passes(s, AttackWindow(PerimeterPoint(0.5), 5.0, 4.5)),
                  WindowExceedsHorizon);
}

TEST_CASE("count_passes is additive over adjacent half-open windows") {
  Rng rng(5);
  const ScheduleRealization s = sample_poisson(2.0, 200.0, rng);
  for (int i = 0; i < 2000; ++i) {
    const PerimeterPoint x(rng.uniform());
    const double start = rng.uniform(0.0, 100.0);
    const double t1 = rng.uniform(0.01, 40.0);
    const double t2 = rng.uniform(0.01, 40.0);
    const int whole = count_passes(s, AttackWindow(x, start, t1 + t2));
    const int first = count_passes(s, AttackWindow(x, start, t1));
    const int second = count_passes(s, AttackWindow(x, start + t1, t2));
    // Exact whenever start + t1 + t2 rounds like (start + t1) + t2.
    if ((start + t1) + t2 == start + (t1 + t2)) CHECK(whole == first + second);
  }
}

TEST_CASE("constant-speed counts do not depend on the attacked point") {
  Rng rng(9);
  const ScheduleRealization s = sample_poisson(1.0, 300.0, rng);
  for (int i = 0; i < 2000; ++i) {
    const double x = rng.uniform(0.0, 0.99);
    const double y = rng.uniform(0.0, 0.99);
    const double start = rng.uniform(2.0, 250.0);
    const double t = rng.uniform(0.1, 20.0);
    CHECK(count_passes(s, AttackWindow(PerimeterPoint(x), start, t)) ==
          count_passes(s, AttackWindow(PerimeterPoint(y), start + (y - x), t)));
  }
}

TEST_CASE("validate_rate_cap") {
  Rng rng(1);
  SUBCASE("Poisson schedule") {
    const ScheduleRealization s = sample_poisson(1.0, 1e4, rng);
    const RateCapReport r = validate_rate_cap(s, 1.0, PerimeterPoint(0.37), 0.02);
    CHECK(r.pass_dispatch_ratio == 1.0);
    CHECK(r.pass_rate == doctest::Approx(1.0).epsilon(0.03));
    CHECK_FALSE(r.violation);
  }
  SUBCASE("mixed directions and speeds pass every point once per dispatch") {
    Assignment mixed;
    mixed.direction.counterclockwise_fraction = 0.5;
    mixed.speed = SpeedPolicy::random_piecewise(3, 0.5, 2.0);
    const ScheduleRealization s = sample_poisson(1.0, 1e4, rng, mixed);
    for (double x : {0.0, 0.1, 0.5, 0.9}) {
      const RateCapReport r = validate_rate_cap(s, 1.0, PerimeterPoint(x), 0.02);
      CHECK(r.passes == r.dispatches);
      CHECK(r.pass_rate == r.dispatch_rate);
    }
  }
  SUBCASE("dispatching at twice the cap is flagged") {
    const ScheduleRealization s = sample_deterministic(2.0, 1e4);
    CHECK(validate_rate_cap(s, 1.0, PerimeterPoint(0.5), 0.02).violation);
  }
  SUBCASE("short horizons are rejected") {
    const ScheduleRealization s = sample_deterministic(1.0, 50.0);
    CHECK_THROWS_AS(validate_rate_cap(s, 1.0, PerimeterPoint(0.5), 0.02),
                    HorizonTooShort);
  }
}

TEST_CASE("realization invariants and CSV dump") {
  CHECK_THROWS_AS(ScheduleRealization(5.0, {event(6.0, Direction::kClockwise)}),
                  ValidationError);
  CHECK_THROWS_AS(ScheduleRealization(5.0, {event(2.0, Direction::kClockwise),
                                            event(1.0, Direction::kClockwise)}),
                  ValidationError);
  std::vector<DispatchEvent> events{event(0.5, Direction::kClockwise),
                                    event(1.25, Direction::kCounterclockwise)};
  events[1].tag = Tag::kRed;
  std::ostringstream os;
  write_realization_csv(os, ScheduleRealization(2.0, events));
  CHECK(os.str() == "dispatch_time,direction,tag\n0.5,cw,plain\n1.25,ccw,red\n");
}

}  // namespace
}  // namespace patrol
