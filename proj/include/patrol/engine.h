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

#ifndef PATROL_ENGINE_H_
#define PATROL_ENGINE_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "patrol/analytics.h"
#include "patrol/attackers.h"
#include "patrol/schedules.h"

namespace patrol {

inline constexpr int kResultSchemaVersion = 1;

struct EngineOptions {
  PerimeterPoint point{0.25};
  // Burn-in, in cycles of the schedule under attack.
  double burn_in_cycles = 100.0;
  double level = 0.95;
  // 0 picks std::thread::hardware_concurrency(). Results do not depend on it.
  int workers = 0;
};

struct SimulationResult {
  long long replications = 0;
  long long detections = 0;
  double estimate = 0.0;
  double ci_half_width = 0.0;
  double ci_level = 0.95;
  // Number of replications that saw n passes.
  std::map<int, long long> pass_counts;
  std::uint64_t seed = 0;
  std::string generator;
  std::string strategy;
  double lambda = 0.0;
  double t = 0.0;
  double p = 0.0;

  // The ci_half_width expressed in standard errors of the estimate.
  double standard_error() const;
  CountDistribution pass_pmf() const;
  double mean_passes() const;
  // Standard error of mean_passes().
  double mean_passes_standard_error() const;
};

// Detection probability of `strategy` against `generator` by simulation.
// Replication i draws its schedule, attacker and detection randomness from
// substreams keyed by (seed, i), so the result depends only on (seed,
// replications) and never on the worker count.
SimulationResult estimate_detection(const ScheduleGenerator& generator,
                                    const AttackerStrategy& strategy,
                                    const GameParams& params,
                                    long long replications, std::uint64_t seed,
                                    const EngineOptions& options = {});

// Law of the number of passes N seen by the strategy's attacks.
CountDistribution empirical_pass_pmf(const ScheduleGenerator& generator,
                                     const AttackerStrategy& strategy,
                                     const GameParams& params,
                                     long long replications, std::uint64_t seed,
                                     const EngineOptions& options = {});

// Every strategy against the same realizations and random numbers.
std::vector<SimulationResult> estimate_family(
    const ScheduleGenerator& generator,
    const std::vector<AttackerStrategy>& strategies, const GameParams& params,
    long long replications, std::uint64_t seed,
    const EngineOptions& options = {});

struct Contender {
  ScheduleGenerator generator;
  AttackerStrategy strategy;
};

struct PairDifference {
  std::size_t first;   // input indices
  std::size_t second;
  double difference;   // estimate(first) - estimate(second)
  double ci_half_width;
};

struct ComparisonTable {
  std::vector<SimulationResult> results;  // input order
  std::vector<std::size_t> ranking;       // indices, best detection first
  std::vector<PairDifference> differences;
};

// Shared-seed estimates for every contender plus paired differences.
ComparisonTable compare_strategies(const std::vector<Contender>& contenders,
                                   const GameParams& params,
                                   long long replications, std::uint64_t seed,
                                   const EngineOptions& options = {});

struct BestResponseResult {
  std::vector<SimulationResult> candidates;  // family order
  std::size_t best = 0;

  const SimulationResult& best_result() const { return candidates[best]; }
};

// Stationary attacker, kPhaseGridSize phase offsets per cycle and after-pass
// attackers with k in 1..2(m+1) and delays 0, Δ/8, ..., Δ.
std::vector<AttackerStrategy> default_family(const GameParams& params);

// Minimum detection over `family` against `generator`, with common random
// numbers across candidates. Ties go to the earliest candidate.
BestResponseResult best_response_search(
    const ScheduleGenerator& generator, const GameParams& params,
    const std::vector<AttackerStrategy>& family, long long replications,
    std::uint64_t seed, const EngineOptions& options = {});

nlohmann::json to_json(const SimulationResult& r);
// Columns: estimate,ci,replications,seed,generator,strategy,lambda,t,p
std::string csv_header();
std::string to_csv_row(const SimulationResult& r);

}  // namespace patrol

#endif  // PATROL_ENGINE_H_
