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

#ifndef PATROL_SCHEDULES_H_
#define PATROL_SCHEDULES_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "patrol/core_model.h"
#include "patrol/rng.h"

namespace patrol {

// How sampled dispatches are given a direction and a speed profile.
// The defaults (all clockwise, constant speed 1) consume no randomness.
struct DirectionPolicy {
  // 0 sends everyone clockwise, 1 everyone counterclockwise; values in
  // between draw each patroller's direction independently.
  double counterclockwise_fraction = 0.0;
};

struct SpeedPolicy {
  enum class Kind { kConstant, kProfile, kRandomPiecewise };

  Kind kind = Kind::kConstant;
  double speed = 1.0;                  // kConstant
  std::optional<SpeedProfile> profile;  // kProfile
  int segments = 1;                    // kRandomPiecewise
  double min_speed = 1.0;
  double max_speed = 1.0;

  static SpeedPolicy constant(double speed = 1.0);
  static SpeedPolicy fixed(SpeedProfile profile);
  // Each patroller gets `segments` pieces of random length, each with a speed
  // drawn uniformly from [min_speed, max_speed].
  static SpeedPolicy random_piecewise(int segments, double min_speed,
                                      double max_speed);

  double max_lap_time() const;
};

struct Assignment {
  DirectionPolicy direction;
  SpeedPolicy speed;

  bool is_default() const;
  double max_lap_time() const { return speed.max_lap_time(); }
  // Fills in direction and speed for `e`, drawing from `rng` as needed.
  void apply(DispatchEvent& e, Rng& rng) const;
};

// A fixed list of dispatches inside one period, repeated every period.
struct DispatchPattern {
  struct Entry {
    double offset;
    Direction direction = Direction::kClockwise;
    SpeedProfile speed = SpeedProfile::constant();
  };

  double period = 1.0;
  std::vector<Entry> entries;

  double dispatch_rate() const {
    return static_cast<double>(entries.size()) / period;
  }
  double max_lap_time() const;
};

// Blue dispatches at jt + kΔ (k = 1..m) and an independent Bernoulli(r) red
// dispatch at every jt. Falls back to the 1/λ lattice when λt is an integer.
// Requires horizon >= t.
ScheduleRealization sample_optimal(const GameParams& params, double horizon,
                                   Rng& rng, const Assignment& assign = {});

// Dispatches at k/λ, k = 0, 1, ...
ScheduleRealization sample_deterministic(double lambda, double horizon,
                                         const Assignment& assign = {});

// Homogeneous Poisson process of rate λ.
ScheduleRealization sample_poisson(double lambda, double horizon, Rng& rng,
                                   const Assignment& assign = {});

// U + k/λ with U ~ Uniform[0, 1/λ).
ScheduleRealization sample_uniform_offset(double lambda, double horizon,
                                          Rng& rng,
                                          const Assignment& assign = {});

ScheduleRealization sample_pattern(const DispatchPattern& pattern,
                                   double horizon);

enum class GeneratorKind {
  kOptimal,
  kDeterministic,
  kPoisson,
  kUniformOffset,
  kPattern,
};

std::string_view to_string(GeneratorKind kind);

// A defender strategy: an immutable recipe for sampling realizations.
class ScheduleGenerator {
 public:
  static ScheduleGenerator optimal(double lambda, double t);
  static ScheduleGenerator deterministic(double lambda);
  static ScheduleGenerator poisson(double lambda);
  static ScheduleGenerator uniform_offset(double lambda);
  // `lambda` is the cap the pattern is checked against.
  static ScheduleGenerator pattern(double lambda, DispatchPattern pattern);

  // Builds one of the named kinds (`optimal`, `deterministic`, `poisson`,
  // `uniform-offset`) for the given game.
  static ScheduleGenerator by_name(std::string_view name,
                                   const GameParams& params);

  ScheduleGenerator with_assignment(Assignment assign) const;
  // Dispatch rate below the cap for lattice and Poisson kinds.
  ScheduleGenerator with_dispatch_rate(double rate) const;
  ScheduleGenerator with_label(std::string label) const;

  GeneratorKind kind() const { return kind_; }
  double lambda() const { return lambda_; }
  double t() const { return t_; }
  double dispatch_rate() const;
  const Assignment& assignment() const { return assign_; }
  const std::optional<DispatchPattern>& dispatch_pattern() const {
    return pattern_;
  }
  // Length of one cycle of the schedule; stationary attackers start at a
  // uniform phase within one cycle.
  double cycle_length() const;
  double max_lap_time() const;
  // Reporting label: the kind string, or the label given to file specs.
  const std::string& name() const { return label_; }

  // Samples dispatches up to horizon + max_lap_time(), so every window that
  // ends by `horizon` can be counted.
  ScheduleRealization sample(double horizon, Rng& rng) const;

 private:
  ScheduleGenerator(GeneratorKind kind, double lambda);

  GeneratorKind kind_;
  double lambda_;
  double rate_;
  double t_ = 0.0;
  Assignment assign_;
  std::optional<DispatchPattern> pattern_;
  std::string label_;
};

}  // namespace patrol

#endif  // PATROL_SCHEDULES_H_
