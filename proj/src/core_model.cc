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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <sstream>

#include "patrol/errors.h"

namespace patrol {

GameParams::GameParams(double lambda, double t, double p)
    : lambda_(lambda), t_(t), p_(p) {
  if (!(std::isfinite(lambda) && lambda > 0.0)) {
    throw ValidationError("lambda must be finite and > 0, got " +
                          format_double(lambda));
  }
  if (!(std::isfinite(t) && t > 0.0)) {
    throw ValidationError("t must be finite and > 0, got " + format_double(t));
  }
  if (!(p > 0.0 && p <= 1.0)) {
    throw ValidationError("p must lie in (0, 1], got " + format_double(p));
  }
  if (!std::isfinite(lambda * t)) {
    throw ValidationError("lambda * t overflows");
  }
}

double GameParams::load() const {
  const double product = lambda_ * t_;
  const double nearest = std::round(product);
  return std::abs(product - nearest) < kIntegerGuard ? nearest : product;
}

bool GameParams::integer_load() const {
  const double l = load();
  return l == std::floor(l);
}

int GameParams::m() const { return static_cast<int>(std::floor(load())); }

double GameParams::r() const {
  const double l = load();
  return l - std::floor(l);
}

PerimeterPoint::PerimeterPoint(double x) : x_(x) {
  if (!(x >= 0.0 && x < 1.0)) {
    throw ValidationError("perimeter position must lie in [0, 1), got " +
                          format_double(x));
  }
}

std::string_view to_string(Direction d) {
  return d == Direction::kClockwise ? "cw" : "ccw";
}

std::string_view to_string(Tag t) {
  switch (t) {
    case Tag::kBlue:
      return "blue";
    case Tag::kRed:
      return "red";
    case Tag::kPlain:
      break;
  }
  return "plain";
}

Direction parse_direction(std::string_view s) {
  if (s == "cw" || s == "clockwise") return Direction::kClockwise;
  if (s == "ccw" || s == "counterclockwise") {
    return Direction::kCounterclockwise;
  }
  throw ParseError("unknown direction '" + std::string(s) + "'");
}

SpeedProfile SpeedProfile::constant(double speed) {
  if (!(std::isfinite(speed) && speed > 0.0)) {
    throw ValidationError("speed must be finite and > 0");
  }
  SpeedProfile profile;
  profile.constant_speed_ = speed;
  profile.lap_time_ = 1.0 / speed;
  return profile;
}

SpeedProfile::SpeedProfile(std::vector<Segment> segments)
    : segments_(std::move(segments)) {
  if (segments_.empty()) {
    throw ValidationError("speed profile needs at least one segment");
  }
  double total = 0.0;
  lap_time_ = 0.0;
  for (const Segment& s : segments_) {
    if (!(std::isfinite(s.fraction) && s.fraction > 0.0)) {
      throw ValidationError("speed segment fractions must be > 0");
    }
    if (!(std::isfinite(s.speed) && s.speed > 0.0)) {
      throw ValidationError(
          "speed segment speeds must be > 0 (patrollers may not stop or turn "
          "around)");
    }
    total += s.fraction;
    lap_time_ += s.fraction / s.speed;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw ValidationError("speed segment fractions must sum to 1, got " +
                          format_double(total));
  }
  if (!(std::isfinite(lap_time_) && lap_time_ > 0.0)) {
    throw ValidationError("lap time must be finite and > 0");
  }
  if (segments_.size() == 1) {
    constant_speed_ = segments_.front().speed;
    lap_time_ = 1.0 / constant_speed_;
    segments_.clear();
  }
}

double SpeedProfile::travel_time(double arc) const {
  if (segments_.empty()) return arc / constant_speed_;
  double covered = 0.0;
  double elapsed = 0.0;
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const Segment& s = segments_[i];
    const bool last = i + 1 == segments_.size();
    if (last || arc <= covered + s.fraction) {
      return elapsed + (arc - covered) / s.speed;
    }
    covered += s.fraction;
    elapsed += s.fraction / s.speed;
  }
  return elapsed;
}

std::vector<SpeedProfile::Segment> SpeedProfile::segments() const {
  if (segments_.empty()) return {Segment{1.0, constant_speed_}};
  return segments_;
}

ScheduleRealization::ScheduleRealization(double horizon,
                                         std::vector<DispatchEvent> events,
                                         double max_lap_time)
    : horizon_(horizon), events_(std::move(events)) {
  if (!(std::isfinite(horizon) && horizon >= 0.0)) {
    throw ValidationError("horizon must be finite and >= 0");
  }
  double observed = 0.0;
  for (std::size_t i = 0; i < events_.size(); ++i) {
    const double d = events_[i].dispatch_time;
    if (!(d >= 0.0 && d < horizon)) {
      throw ValidationError("dispatch time " + format_double(d) +
                            " outside [0, horizon)");
    }
    if (i > 0 && d < events_[i - 1].dispatch_time) {
      throw ValidationError("dispatch events must be sorted by time");
    }
    observed = std::max(observed, events_[i].speed.lap_time());
  }
  if (max_lap_time < 0.0) {
    max_lap_time_ = observed;
  } else {
    if (max_lap_time < observed) {
      throw ValidationError("declared max lap time is below an event's lap");
    }
    max_lap_time_ = max_lap_time;
  }
}

std::vector<double> ScheduleRealization::pass_times(const PerimeterPoint& point,
                                                    double from,
                                                    double to) const {
  std::vector<double> out;
  auto it = std::lower_bound(
      events_.begin(), events_.end(), from - max_lap_time_,
      [](const DispatchEvent& e, double v) { return e.dispatch_time < v; });
  for (; it != events_.end() && it->dispatch_time < to; ++it) {
    const double a = arrival_time(*it, point);
    if (a >= from && a < to) out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

AttackWindow::AttackWindow(PerimeterPoint point, double start, double duration)
    : point(point), start(start), duration(duration) {
  if (!(std::isfinite(start) && start >= 0.0)) {
    throw ValidationError("attack start must be >= 0");
  }
  if (!(std::isfinite(duration) && duration > 0.0)) {
    throw ValidationError("attack duration must be > 0");
  }
}

double arrival_time(const DispatchEvent& e, const PerimeterPoint& x) {
  double arc = x.x();
  if (e.direction == Direction::kCounterclockwise && arc > 0.0) {
    arc = 1.0 - arc;
  }
  return e.dispatch_time + e.speed.travel_time(arc);
}

int count_passes(const ScheduleRealization& s, const AttackWindow& w) {
  const double end = w.end();
  if (end > s.safe_horizon()) {
    throw WindowExceedsHorizon(
        "attack window ends at " + format_double(end) +
        " but the realization only covers passes up to " +
        format_double(s.safe_horizon()));
  }
  const auto& events = s.events();
  auto it = std::lower_bound(
      events.begin(), events.end(), w.start - s.max_lap_time(),
      [](const DispatchEvent& e, double v) { return e.dispatch_time < v; });
  int n = 0;
  for (; it != events.end() && it->dispatch_time < end; ++it) {
    const double a = arrival_time(*it, w.point);
    if (a >= w.start && a < end) ++n;
  }
  return n;
}

RateCapReport validate_rate_cap(const ScheduleRealization& s, double lambda,
                                const PerimeterPoint& x, double tolerance,
                                double min_expected_dispatches) {
  if (!(lambda > 0.0)) throw ValidationError("lambda must be > 0");
  if (s.horizon() * lambda < min_expected_dispatches) {
    throw HorizonTooShort("horizon * lambda = " +
                          format_double(s.horizon() * lambda) +
                          " is below the required " +
                          format_double(min_expected_dispatches));
  }
  RateCapReport report;
  report.horizon = s.horizon();
  report.lambda = lambda;
  report.tolerance = tolerance;
  report.dispatches = static_cast<std::int64_t>(s.events().size());
  // Every event dispatched before the horizon finishes its lap by
  // horizon + max lap, so this range holds each event's pass at x.
  const double lap = s.max_lap_time();
  for (const DispatchEvent& e : s.events()) {
    const double a = arrival_time(e, x);
    if (a >= e.dispatch_time && a <= e.dispatch_time + lap &&
        a < s.horizon() + lap) {
      ++report.passes;
    }
  }
  report.dispatch_rate = static_cast<double>(report.dispatches) / s.horizon();
  report.pass_rate = static_cast<double>(report.passes) / s.horizon();
  report.pass_dispatch_ratio =
      report.dispatches == 0 ? 1.0
                             : static_cast<double>(report.passes) /
                                   static_cast<double>(report.dispatches);
  const double cap = lambda * (1.0 + tolerance);
  report.violation = report.dispatch_rate > cap || report.pass_rate > cap;
  return report;
}

void write_realization_csv(std::ostream& os, const ScheduleRealization& s) {
  os << "dispatch_time,direction,tag\n";
  for (const DispatchEvent& e : s.events()) {
    os << format_double(e.dispatch_time) << ',' << to_string(e.direction)
       << ',' << to_string(e.tag) << '\n';
  }
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

}  // namespace patrol
