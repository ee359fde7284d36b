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

#ifndef PATROL_CORE_MODEL_H_
#define PATROL_CORE_MODEL_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace patrol {

// Values of λt within this distance of an integer are treated as integers.
inline constexpr double kIntegerGuard = 1e-9;

// The game Γ(λ, t, p): dispatch-rate cap, attack duration and per-pass
// detection probability. m and r are derived on every call.
class GameParams {
 public:
  GameParams(double lambda, double t, double p);

  double lambda() const { return lambda_; }
  double t() const { return t_; }
  double p() const { return p_; }

  // λt, snapped to the nearest integer when within kIntegerGuard of it.
  double load() const;
  bool integer_load() const;
  // m = ⌊λt⌋ and r = λt − m, computed from the snapped load.
  int m() const;
  double r() const;
  // Spacing of the deterministic dispatches inside one period, t / (m + 1).
  double delta() const { return t_ / (m() + 1); }

 private:
  double lambda_;
  double t_;
  double p_;
};

// Position on a unit-circumference perimeter; the base sits at x = 0.
class PerimeterPoint {
 public:
  explicit PerimeterPoint(double x = 0.0);
  double x() const { return x_; }

 private:
  double x_;
};

enum class Direction : std::uint8_t { kClockwise, kCounterclockwise };
enum class Tag : std::uint8_t { kPlain, kBlue, kRed };

std::string_view to_string(Direction d);
std::string_view to_string(Tag t);
Direction parse_direction(std::string_view s);

// Speed as a function of the arc length already travelled in the lap.
// Segments cover the lap in order; speeds are strictly positive, so a
// patroller never turns around and passes each point exactly once.
class SpeedProfile {
 public:
  struct Segment {
    double fraction;
    double speed;
  };

  // Constant speed around the whole lap.
  static SpeedProfile constant(double speed = 1.0);
  explicit SpeedProfile(std::vector<Segment> segments);

  double lap_time() const { return lap_time_; }
  // Time to cover `arc` ∈ [0, 1] of the lap from the base.
  double travel_time(double arc) const;
  bool is_constant() const { return segments_.empty(); }
  // Segments as given; a constant profile reports a single full segment.
  std::vector<Segment> segments() const;

 private:
  SpeedProfile() = default;

  double constant_speed_ = 1.0;
  // Empty for constant-speed profiles so that copies do not allocate.
  std::vector<Segment> segments_;
  double lap_time_ = 1.0;
};

struct DispatchEvent {
  double dispatch_time = 0.0;
  Direction direction = Direction::kClockwise;
  Tag tag = Tag::kPlain;
  SpeedProfile speed = SpeedProfile::constant();
};

// Time-sorted finite-horizon sample of a patrol schedule.
class ScheduleRealization {
 public:
  ScheduleRealization() = default;
  // `max_lap_time` bounds the lap time of every event the generator could
  // have produced; when negative it is taken from the events themselves.
  ScheduleRealization(double horizon, std::vector<DispatchEvent> events,
                      double max_lap_time = -1.0);

  double horizon() const { return horizon_; }
  const std::vector<DispatchEvent>& events() const { return events_; }
  double max_lap_time() const { return max_lap_time_; }
  // Latest window end for which every pass is accounted for.
  double safe_horizon() const { return horizon_ - max_lap_time_; }

  // Passes at `point` with time in [from, to), sorted. Unlike count_passes
  // this does not check the horizon; callers bound the range themselves.
  std::vector<double> pass_times(const PerimeterPoint& point,
                                 double from, double to) const;

 private:
  double horizon_ = 0.0;
  std::vector<DispatchEvent> events_;
  double max_lap_time_ = 0.0;
};

// Attack on `point` over the half-open interval [start, start + duration).
struct AttackWindow {
  AttackWindow(PerimeterPoint point, double start, double duration);

  PerimeterPoint point;
  double start;
  double duration;

  double end() const { return start + duration; }
};

// Time at which the patroller of `e` passes `x` during its single lap.
double arrival_time(const DispatchEvent& e, const PerimeterPoint& x);

// Number of passes of `s` at the window's point inside the window.
// Throws WindowExceedsHorizon when the window ends after s.safe_horizon().
int count_passes(const ScheduleRealization& s, const AttackWindow& w);

struct RateCapReport {
  double horizon = 0.0;
  double lambda = 0.0;
  double tolerance = 0.0;
  std::int64_t dispatches = 0;
  std::int64_t passes = 0;
  double dispatch_rate = 0.0;
  double pass_rate = 0.0;
  double pass_dispatch_ratio = 0.0;
  bool violation = false;
};

// Observed dispatch and pass rates of `s` at `x` against the cap `lambda`.
// Requires horizon · lambda ≥ min_expected_dispatches.
RateCapReport validate_rate_cap(const ScheduleRealization& s, double lambda,
                                const PerimeterPoint& x, double tolerance,
                                double min_expected_dispatches = 100.0);

// CSV with header `dispatch_time,direction,tag`.
void write_realization_csv(std::ostream& os, const ScheduleRealization& s);

// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

}  // namespace patrol

#endif  // PATROL_CORE_MODEL_H_
