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

#include "patrol/attackers.h"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "patrol/errors.h"

namespace patrol {
namespace {

double parse_number(std::string_view s, std::string_view what) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ParseError("invalid " + std::string(what) + " '" + std::string(s) +
                     "'");
  }
  return v;
}

int parse_int(std::string_view s, std::string_view what) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError("invalid " + std::string(what) + " '" + std::string(s) +
                     "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t next = s.find(sep, pos);
    out.push_back(s.substr(pos, next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

}  // namespace

AttackerStrategy AttackerStrategy::fixed_time(double s) {
  if (!(std::isfinite(s) && s >= 0.0)) {
    throw ValidationError("fixed attack start must be >= 0");
  }
  AttackerStrategy a;
  a.kind = AttackerKind::kFixedTime;
  a.start = s;
  return a;
}

AttackerStrategy AttackerStrategy::stationary() { return AttackerStrategy{}; }

AttackerStrategy AttackerStrategy::after_pass(int k, double delay) {
  if (k < 1) throw ValidationError("pass index k must be >= 1");
  if (!(std::isfinite(delay) && delay >= 0.0)) {
    throw ValidationError("after-pass delay must be >= 0");
  }
  AttackerStrategy a;
  a.kind = AttackerKind::kAfterPass;
  a.pass_index = k;
  a.delay = delay;
  return a;
}

AttackerStrategy AttackerStrategy::swept_phase(int index, int grid) {
  if (grid < 1 || index < 0 || index >= grid) {
    throw ValidationError("phase index must lie in [0, grid)");
  }
  AttackerStrategy a;
  a.kind = AttackerKind::kSweptPhase;
  a.phase_index = index;
  a.phase_grid = grid;
  return a;
}

std::string AttackerStrategy::to_string() const {
  switch (kind) {
    case AttackerKind::kFixedTime:
      return "fixed:" + format_double(start);
    case AttackerKind::kStationary:
      return "stationary";
    case AttackerKind::kAfterPass:
      return "after-pass:" + std::to_string(pass_index) + ":" +
             format_double(delay);
    case AttackerKind::kSweptPhase:
      if (phase_grid != kPhaseGridSize) {
        return "sweep:" + std::to_string(phase_index) + "/" +
               std::to_string(phase_grid);
      }
      return "sweep:" + std::to_string(phase_index);
  }
  return "unknown";
}

std::vector<AttackerStrategy> parse_strategies(std::string_view spec) {
  const auto parts = split(spec, ':');
  const std::string_view head = parts.front();
  if (head == "stationary" && parts.size() == 1) {
    return {AttackerStrategy::stationary()};
  }
  if (head == "fixed" && parts.size() == 2) {
    return {AttackerStrategy::fixed_time(parse_number(parts[1], "start time"))};
  }
  if (head == "after-pass" && parts.size() == 3) {
    return {AttackerStrategy::after_pass(parse_int(parts[1], "pass index"),
                                         parse_number(parts[2], "delay"))};
  }
  if (head == "sweep") {
    if (parts.size() == 1) {
      std::vector<AttackerStrategy> all;
      for (int i = 0; i < kPhaseGridSize; ++i) {
        all.push_back(AttackerStrategy::swept_phase(i));
      }
      return all;
    }
    if (parts.size() == 2) {
      const auto idx = split(parts[1], '/');
      if (idx.size() == 1) {
        return {AttackerStrategy::swept_phase(parse_int(idx[0], "phase index"))};
      }
      if (idx.size() == 2) {
        return {AttackerStrategy::swept_phase(parse_int(idx[0], "phase index"),
                                              parse_int(idx[1], "phase grid"))};
      }
    }
  }
  throw ParseError("unknown strategy '" + std::string(spec) +
                   "' (expected fixed:<s>, stationary, after-pass:<k>:<delay> "
                   "or sweep[:<i>])");
}

AttackerStrategy parse_strategy(std::string_view spec) {
  auto all = parse_strategies(spec);
  if (all.size() != 1) {
    throw ParseError("'" + std::string(spec) + "' names a strategy family");
  }
  return all.front();
}

AttackWindow fixed_time_attack(double s, const PerimeterPoint& point,
                               double duration) {
  return AttackWindow(point, s, duration);
}

AttackWindow stationary_attack(const AttackSetting& setting, Rng& rng) {
  return AttackWindow(setting.point,
                      setting.burn_in + setting.period * rng.uniform(),
                      setting.duration);
}

AttackWindow after_kth_pass_attack(int k, double delay,
                                   const ScheduleRealization& realization,
                                   const AttackSetting& setting, Rng& rng) {
  if (k < 1) throw ValidationError("pass index k must be >= 1");
  const double origin = setting.burn_in + setting.period * rng.uniform();
  const double lap = realization.max_lap_time();
  const double certain = realization.safe_horizon();
  const auto& events = realization.events();

  // Arrivals are at most one lap after dispatch, so once the next dispatch
  // is later than the current k-th smallest arrival, that arrival is final.
  std::vector<double> arrivals;
  auto it = std::lower_bound(
      events.begin(), events.end(), origin - lap,
      [](const DispatchEvent& e, double v) { return e.dispatch_time < v; });
  double kth = 0.0;
  bool found = false;
  for (; it != events.end(); ++it) {
    if (arrivals.size() >= static_cast<std::size_t>(k) &&
        it->dispatch_time > arrivals[k - 1]) {
      kth = arrivals[k - 1];
      found = true;
      break;
    }
    const double a = arrival_time(*it, setting.point);
    if (a < origin) continue;
    arrivals.insert(std::upper_bound(arrivals.begin(), arrivals.end(), a), a);
    if (arrivals.size() > static_cast<std::size_t>(k)) arrivals.pop_back();
  }
  if (!found && arrivals.size() == static_cast<std::size_t>(k) &&
      arrivals.back() <= realization.horizon()) {
    kth = arrivals.back();
    found = true;
  }
  if (!found || kth >= certain) {
    throw InsufficientPasses("fewer than " + std::to_string(k) +
                             " passes observable after " +
                             format_double(origin) + " before " +
                             format_double(certain));
  }
  return AttackWindow(setting.point, kth + delay + kReactionDelay,
                      setting.duration);
}

AttackWindow swept_phase_attack(int index, int grid,
                                const AttackSetting& setting) {
  const double phase = (index + 0.5) / grid;
  return AttackWindow(setting.point, setting.burn_in + phase * setting.period,
                      setting.duration);
}

AttackWindow choose_window(const AttackerStrategy& strategy,
                           const ScheduleRealization& realization,
                           const AttackSetting& setting, Rng& rng) {
  switch (strategy.kind) {
    case AttackerKind::kFixedTime:
      return fixed_time_attack(strategy.start, setting.point, setting.duration);
    case AttackerKind::kStationary:
      return stationary_attack(setting, rng);
    case AttackerKind::kAfterPass:
      return after_kth_pass_attack(strategy.pass_index, strategy.delay,
                                   realization, setting, rng);
    case AttackerKind::kSweptPhase:
      return swept_phase_attack(strategy.phase_index, strategy.phase_grid,
                                setting);
  }
  throw std::logic_error("unhandled attacker kind");
}

double horizon_hint(const AttackerStrategy& strategy,
                    const AttackSetting& setting, double rate) {
  const double steady = setting.burn_in + setting.period + setting.duration;
  switch (strategy.kind) {
    case AttackerKind::kFixedTime:
      return strategy.start + setting.duration;
    case AttackerKind::kStationary:
    case AttackerKind::kSweptPhase:
      return steady;
    case AttackerKind::kAfterPass:
      return steady + strategy.delay + kReactionDelay +
             2.0 * (strategy.pass_index + 1) *
                 std::max(setting.period, 1.0 / rate);
  }
  return steady;
}

}  // namespace patrol
