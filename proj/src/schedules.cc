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

#include "patrol/schedules.h"

#include <algorithm>
#include <cmath>

#include "patrol/errors.h"

namespace patrol {
namespace {

void check_rate(double lambda) {
  if (!(std::isfinite(lambda) && lambda > 0.0)) {
    throw ValidationError("dispatch rate must be finite and > 0");
  }
}

void check_horizon(double horizon) {
  if (!(std::isfinite(horizon) && horizon >= 0.0)) {
    throw ValidationError("horizon must be finite and >= 0");
  }
}

DispatchEvent make_event(double time, Tag tag, const Assignment& assign,
                         Rng& rng) {
  DispatchEvent e;
  e.dispatch_time = time;
  e.tag = tag;
  assign.apply(e, rng);
  return e;
}

}  // namespace

SpeedPolicy SpeedPolicy::constant(double speed) {
  SpeedProfile::constant(speed);  // validates
  SpeedPolicy p;
  p.kind = Kind::kConstant;
  p.speed = speed;
  return p;
}

SpeedPolicy SpeedPolicy::fixed(SpeedProfile profile) {
  SpeedPolicy p;
  p.kind = Kind::kProfile;
  p.profile = std::move(profile);
  return p;
}

SpeedPolicy SpeedPolicy::random_piecewise(int segments, double min_speed,
                                          double max_speed) {
  if (segments < 1) throw ValidationError("need at least one speed segment");
  if (!(min_speed > 0.0 && max_speed >= min_speed && std::isfinite(max_speed))) {
    throw ValidationError("random speeds need 0 < min_speed <= max_speed");
  }
  SpeedPolicy p;
  p.kind = Kind::kRandomPiecewise;
  p.segments = segments;
  p.min_speed = min_speed;
  p.max_speed = max_speed;
  return p;
}

double SpeedPolicy::max_lap_time() const {
  switch (kind) {
    case Kind::kConstant:
      return 1.0 / speed;
    case Kind::kProfile:
      return profile->lap_time();
    case Kind::kRandomPiecewise:
      return 1.0 / min_speed;
  }
  return 1.0;
}

bool Assignment::is_default() const {
  return direction.counterclockwise_fraction == 0.0 &&
         speed.kind == SpeedPolicy::Kind::kConstant && speed.speed == 1.0;
}

void Assignment::apply(DispatchEvent& e, Rng& rng) const {
  const double f = direction.counterclockwise_fraction;
  if (f >= 1.0) {
    e.direction = Direction::kCounterclockwise;
  } else if (f > 0.0) {
    e.direction =
        rng.bernoulli(f) ? Direction::kCounterclockwise : Direction::kClockwise;
  } else {
    e.direction = Direction::kClockwise;
  }
  switch (speed.kind) {
    case SpeedPolicy::Kind::kConstant:
      e.speed = SpeedProfile::constant(speed.speed);
      break;
    case SpeedPolicy::Kind::kProfile:
      e.speed = *speed.profile;
      break;
    case SpeedPolicy::Kind::kRandomPiecewise: {
      std::vector<SpeedProfile::Segment> segs(speed.segments);
      double total = 0.0;
      for (auto& s : segs) {
        s.fraction = rng.uniform(0.5, 1.5);
        s.speed = rng.uniform(speed.min_speed, speed.max_speed);
        total += s.fraction;
      }
      double used = 0.0;
      for (std::size_t i = 0; i + 1 < segs.size(); ++i) {
        segs[i].fraction /= total;
        used += segs[i].fraction;
      }
      segs.back().fraction = 1.0 - used;
      e.speed = SpeedProfile(std::move(segs));
      break;
    }
  }
}

double DispatchPattern::max_lap_time() const {
  double lap = 0.0;
  for (const Entry& e : entries) lap = std::max(lap, e.speed.lap_time());
  return lap;
}

ScheduleRealization sample_optimal(const GameParams& params, double horizon,
                                   Rng& rng, const Assignment& assign) {
  check_horizon(horizon);
  const double t = params.t();
  if (horizon < t) {
    throw HorizonTooShort("optimal schedule needs horizon >= t = " +
                          format_double(t));
  }
  if (params.integer_load()) {
    // λt integer: the 1/λ lattice meets exactly m patrollers per window.
    std::vector<DispatchEvent> events;
    for (long long k = 0;; ++k) {
      const double time = static_cast<double>(k) / params.lambda();
      if (time >= horizon) break;
      events.push_back(make_event(time, Tag::kPlain, assign, rng));
    }
    return ScheduleRealization(horizon, std::move(events),
                               assign.max_lap_time());
  }
  const int m = params.m();
  const double r = params.r();
  const double delta = params.delta();
  std::vector<DispatchEvent> events;
  events.reserve(static_cast<std::size_t>(horizon / t + 1) * (m + 1));
  for (long long j = 0;; ++j) {
    const double base = static_cast<double>(j) * t;
    if (base >= horizon) break;
    if (rng.bernoulli(r)) {
      events.push_back(make_event(base, Tag::kRed, assign, rng));
    }
    for (int k = 1; k <= m; ++k) {
      const double time = base + k * delta;
      if (time >= horizon) break;
      events.push_back(make_event(time, Tag::kBlue, assign, rng));
    }
  }
  return ScheduleRealization(horizon, std::move(events), assign.max_lap_time());
}

ScheduleRealization sample_deterministic(double lambda, double horizon,
                                         const Assignment& assign) {
  check_rate(lambda);
  check_horizon(horizon);
  if (assign.direction.counterclockwise_fraction > 0 &&
      assign.direction.counterclockwise_fraction < 1) {
    throw ValidationError(
        "random directions need a random source; use ScheduleGenerator");
  }
  if (assign.speed.kind == SpeedPolicy::Kind::kRandomPiecewise) {
    throw ValidationError(
        "random speeds need a random source; use ScheduleGenerator");
  }
  // The policies accepted above never draw, so this source stays unused.
  Rng unused(0);
  std::vector<DispatchEvent> events;
  for (long long k = 0;; ++k) {
    const double time = static_cast<double>(k) / lambda;
    if (time >= horizon) break;
    events.push_back(make_event(time, Tag::kPlain, assign, unused));
  }
  return ScheduleRealization(horizon, std::move(events), assign.max_lap_time());
}

namespace {

ScheduleRealization sample_lattice(double lambda, double offset,
                                   double horizon, Rng& rng,
                                   const Assignment& assign) {
  std::vector<DispatchEvent> events;
  for (long long k = 0;; ++k) {
    const double time = offset + static_cast<double>(k) / lambda;
    if (time >= horizon) break;
    events.push_back(make_event(time, Tag::kPlain, assign, rng));
  }
  return ScheduleRealization(horizon, std::move(events), assign.max_lap_time());
}

}  // namespace

ScheduleRealization sample_poisson(double lambda, double horizon, Rng& rng,
                                   const Assignment& assign) {
  check_rate(lambda);
  check_horizon(horizon);
  std::vector<DispatchEvent> events;
  events.reserve(static_cast<std::size_t>(lambda * horizon * 1.1) + 8);
  double time = 0.0;
  while (true) {
    time += rng.exponential(lambda);
    if (time >= horizon) break;
    events.push_back(make_event(time, Tag::kPlain, assign, rng));
  }
  return ScheduleRealization(horizon, std::move(events), assign.max_lap_time());
}

ScheduleRealization sample_uniform_offset(double lambda, double horizon,
                                          Rng& rng, const Assignment& assign) {
  check_rate(lambda);
  check_horizon(horizon);
  const double offset = rng.uniform() / lambda;
  return sample_lattice(lambda, offset, horizon, rng, assign);
}

ScheduleRealization sample_pattern(const DispatchPattern& pattern,
                                   double horizon) {
  check_horizon(horizon);
  std::vector<DispatchEvent> events;
  for (long long j = 0;; ++j) {
    const double base = static_cast<double>(j) * pattern.period;
    if (base >= horizon) break;
    for (const auto& entry : pattern.entries) {
      const double time = base + entry.offset;
      if (time >= horizon) break;
      DispatchEvent e;
      e.dispatch_time = time;
      e.direction = entry.direction;
      e.speed = entry.speed;
      events.push_back(std::move(e));
    }
  }
  return ScheduleRealization(horizon, std::move(events),
                             pattern.max_lap_time());
}

std::string_view to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::kOptimal:
      return "optimal";
    case GeneratorKind::kDeterministic:
      return "deterministic";
    case GeneratorKind::kPoisson:
      return "poisson";
    case GeneratorKind::kUniformOffset:
      return "uniform-offset";
    case GeneratorKind::kPattern:
      return "pattern";
  }
  return "unknown";
}

ScheduleGenerator::ScheduleGenerator(GeneratorKind kind, double lambda)
    : kind_(kind), lambda_(lambda), rate_(lambda), label_(to_string(kind)) {
  check_rate(lambda);
}

ScheduleGenerator ScheduleGenerator::optimal(double lambda, double t) {
  GameParams check(lambda, t, 1.0);
  ScheduleGenerator g(GeneratorKind::kOptimal, lambda);
  g.t_ = t;
  return g;
}

ScheduleGenerator ScheduleGenerator::deterministic(double lambda) {
  return ScheduleGenerator(GeneratorKind::kDeterministic, lambda);
}

ScheduleGenerator ScheduleGenerator::poisson(double lambda) {
  return ScheduleGenerator(GeneratorKind::kPoisson, lambda);
}

ScheduleGenerator ScheduleGenerator::uniform_offset(double lambda) {
  return ScheduleGenerator(GeneratorKind::kUniformOffset, lambda);
}

ScheduleGenerator ScheduleGenerator::pattern(double lambda,
                                             DispatchPattern pattern) {
  if (!(std::isfinite(pattern.period) && pattern.period > 0.0)) {
    throw ValidationError("pattern period must be > 0");
  }
  if (pattern.entries.empty()) {
    throw ValidationError("pattern needs at least one dispatch");
  }
  std::sort(pattern.entries.begin(), pattern.entries.end(),
            [](const auto& a, const auto& b) { return a.offset < b.offset; });
  for (const auto& e : pattern.entries) {
    if (!(e.offset >= 0.0 && e.offset < pattern.period)) {
      throw ValidationError("pattern offsets must lie in [0, period)");
    }
  }
  ScheduleGenerator g(GeneratorKind::kPattern, lambda);
  g.rate_ = pattern.dispatch_rate();
  if (g.rate_ > lambda * (1.0 + 1e-12)) {
    throw RateCapViolation("pattern dispatches at rate " +
                           format_double(g.rate_) + " above the cap " +
                           format_double(lambda));
  }
  g.pattern_ = std::move(pattern);
  return g;
}

ScheduleGenerator ScheduleGenerator::by_name(std::string_view name,
                                             const GameParams& params) {
  if (name == "optimal") return optimal(params.lambda(), params.t());
  if (name == "deterministic") return deterministic(params.lambda());
  if (name == "poisson") return poisson(params.lambda());
  if (name == "uniform-offset") return uniform_offset(params.lambda());
  throw ParseError("unknown generator '" + std::string(name) +
                   "' (expected optimal, deterministic, poisson, "
                   "uniform-offset or file)");
}

ScheduleGenerator ScheduleGenerator::with_assignment(Assignment assign) const {
  if (kind_ == GeneratorKind::kPattern) {
    throw ValidationError("pattern dispatches carry their own direction/speed");
  }
  const double f = assign.direction.counterclockwise_fraction;
  if (!(f >= 0.0 && f <= 1.0)) {
    throw ValidationError("counterclockwise fraction must lie in [0, 1]");
  }
  ScheduleGenerator g = *this;
  g.assign_ = std::move(assign);
  return g;
}

ScheduleGenerator ScheduleGenerator::with_dispatch_rate(double rate) const {
  check_rate(rate);
  if (kind_ == GeneratorKind::kOptimal || kind_ == GeneratorKind::kPattern) {
    throw ValidationError("dispatch rate is fixed for " +
                          std::string(to_string(kind_)) + " schedules");
  }
  if (rate > lambda_ * (1.0 + 1e-12)) {
    throw RateCapViolation("dispatch rate " + format_double(rate) +
                           " exceeds the cap " + format_double(lambda_));
  }
  ScheduleGenerator g = *this;
  g.rate_ = rate;
  return g;
}

ScheduleGenerator ScheduleGenerator::with_label(std::string label) const {
  ScheduleGenerator g = *this;
  g.label_ = std::move(label);
  return g;
}

double ScheduleGenerator::dispatch_rate() const {
  return kind_ == GeneratorKind::kOptimal ? lambda_ : rate_;
}

double ScheduleGenerator::cycle_length() const {
  switch (kind_) {
    case GeneratorKind::kOptimal: {
      GameParams params(lambda_, t_, 1.0);
      return params.integer_load() ? 1.0 / lambda_ : t_;
    }
    case GeneratorKind::kPattern:
      return pattern_->period;
    case GeneratorKind::kDeterministic:
    case GeneratorKind::kPoisson:
    case GeneratorKind::kUniformOffset:
      break;
  }
  return 1.0 / rate_;
}

double ScheduleGenerator::max_lap_time() const {
  if (kind_ == GeneratorKind::kPattern) return pattern_->max_lap_time();
  return assign_.max_lap_time();
}

ScheduleRealization ScheduleGenerator::sample(double horizon, Rng& rng) const {
  const double full = horizon + max_lap_time();
  switch (kind_) {
    case GeneratorKind::kOptimal:
      return sample_optimal(GameParams(lambda_, t_, 1.0), std::max(full, t_),
                            rng, assign_);
    case GeneratorKind::kDeterministic:
      return sample_lattice(rate_, 0.0, full, rng, assign_);
    case GeneratorKind::kPoisson:
      return sample_poisson(rate_, full, rng, assign_);
    case GeneratorKind::kUniformOffset:
      return sample_uniform_offset(rate_, full, rng, assign_);
    case GeneratorKind::kPattern:
      return sample_pattern(*pattern_, full);
  }
  throw std::logic_error("unhandled generator kind");
}

}  // namespace patrol
