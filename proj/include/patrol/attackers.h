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

#ifndef PATROL_ATTACKERS_H_
#define PATROL_ATTACKERS_H_

#include <string>
#include <string_view>
#include <vector>

#include "patrol/core_model.h"
#include "patrol/rng.h"

namespace patrol {

// After-pass attackers begin this long after the instant they aim for. A
// pass is observed strictly before the decision, and without the margin a
// start exactly on a pass would count that patroller.
inline constexpr double kReactionDelay = 1e-9;

inline constexpr int kPhaseGridSize = 128;

enum class AttackerKind { kFixedTime, kStationary, kAfterPass, kSweptPhase };

// Decision rule mapping the observed pass history to an attack start.
// Strategies never look at passes at or after their own start time.
struct AttackerStrategy {
  AttackerKind kind = AttackerKind::kStationary;
  double start = 0.0;       // kFixedTime
  int pass_index = 1;       // kAfterPass: k
  double delay = 0.0;       // kAfterPass
  int phase_index = 0;      // kSweptPhase
  int phase_grid = kPhaseGridSize;

  static AttackerStrategy fixed_time(double s);
  static AttackerStrategy stationary();
  static AttackerStrategy after_pass(int k, double delay);
  static AttackerStrategy swept_phase(int index, int grid = kPhaseGridSize);

  // `fixed:<s>`, `stationary`, `after-pass:<k>:<delay>`, `sweep:<i>`
  std::string to_string() const;

  friend bool operator==(const AttackerStrategy&,
                         const AttackerStrategy&) = default;
};

// Parses one of the strategy strings above. `sweep` (without an index)
// expands to every phase of the grid, hence the vector.
std::vector<AttackerStrategy> parse_strategies(std::string_view spec);
AttackerStrategy parse_strategy(std::string_view spec);

// Where and how long the attack lasts, and what "steady state" means for
// the schedule under attack.
struct AttackSetting {
  PerimeterPoint point;
  double duration;
  // Attacks do not begin before this time (a whole number of cycles).
  double burn_in;
  // Cycle length of the schedule.
  double period;
};

AttackWindow fixed_time_attack(double s, const PerimeterPoint& point,
                               double duration);

// Start uniform over [burn_in, burn_in + period).
AttackWindow stationary_attack(const AttackSetting& setting, Rng& rng);

// Start `delay` (plus kReactionDelay) after the k-th pass observed from a
// uniformly random phase origin in [burn_in, burn_in + period). Throws
// InsufficientPasses when the realization cannot certify k passes.
AttackWindow after_kth_pass_attack(int k, double delay,
                                   const ScheduleRealization& realization,
                                   const AttackSetting& setting, Rng& rng);

// Start at burn_in + (index + 1/2) · period / grid. Midpoints keep the grid
// off the lattice dispatch times.
AttackWindow swept_phase_attack(int index, int grid,
                                const AttackSetting& setting);

AttackWindow choose_window(const AttackerStrategy& strategy,
                           const ScheduleRealization& realization,
                           const AttackSetting& setting, Rng& rng);

// Window end the realization must cover for `strategy`, assuming passes
// arrive at roughly `rate`. A first guess: after-pass attackers may need
// more, which the caller handles by resampling on a longer horizon.
double horizon_hint(const AttackerStrategy& strategy,
                    const AttackSetting& setting, double rate);

}  // namespace patrol

#endif  // PATROL_ATTACKERS_H_
