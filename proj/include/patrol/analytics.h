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

#ifndef PATROL_ANALYTICS_H_
#define PATROL_ANALYTICS_H_

#include <map>
#include <string>

#include "patrol/core_model.h"

namespace patrol {

// Probability mass function on the nonnegative integers with finite support.
class CountDistribution {
 public:
  // Masses must be >= 0 and sum to 1 within kMassTolerance. Zero masses are
  // dropped.
  explicit CountDistribution(std::map<int, double> pmf);

  static constexpr double kMassTolerance = 1e-12;

  static CountDistribution point_mass(int n);
  static CountDistribution from_counts(const std::map<int, long long>& counts);
  // Poisson(mean) truncated at the first n whose upper tail P{N > n} drops
  // below 1e-13. The dropped mass is available from truncation_mass().
  static CountDistribution truncated_poisson(double mean);

  const std::map<int, double>& pmf() const { return pmf_; }
  double mass(int n) const;
  double mean() const;
  double variance() const;
  double truncation_mass() const { return truncation_mass_; }

  // `{3: 0.8, 4: 0.2}`
  std::string to_string() const;

 private:
  std::map<int, double> pmf_;
  double truncation_mass_ = 0.0;
};

// V(λ, t, p) by the two-case formula.
double game_value_cases(const GameParams& params);
// V(λ, t, p) by the single floor/ceil formula.
double game_value_concise(const GameParams& params);
// Both forms; throws std::logic_error if they disagree by more than 1e-12.
double game_value(const GameParams& params);

// Law of N with mean c minimizing E[(1-p)^N]: a point mass when c is an
// integer, otherwise the two surrounding integers.
CountDistribution optimal_count_distribution(double c);

// E[(1-p)^N], the probability that N passes all miss.
double expected_miss(const CountDistribution& d, double p);

struct LemmaOracleResult {
  double minimum_miss;
  CountDistribution minimizer;
  int candidates_examined;
};

// Exhaustive minimum of E[(1-p)^N] over laws on {0..max_support} with mean c.
// The feasible set is a polytope cut by one linear equality, so its vertices
// have at most two support points; the oracle enumerates every pair (i, j)
// with i <= c <= j.
LemmaOracleResult lemma_oracle(double c, double p, int max_support);

// 1 - exp(-p λ t): detection against a rate-λ Poisson schedule.
double poisson_detection(const GameParams& params);

}  // namespace patrol

#endif  // PATROL_ANALYTICS_H_
