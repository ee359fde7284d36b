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

#ifndef PATROL_STATS_H_
#define PATROL_STATS_H_

#include <functional>
#include <map>
#include <vector>

#include "patrol/analytics.h"

namespace patrol {

// Two-sided standard normal quantile for a confidence level, e.g. 1.96 at
// 0.95.
double z_for_level(double level);

// Half-width of the confidence interval for a binomial proportion: the
// normal approximation, or the Wilson interval when successes is 0 or n.
double binomial_ci_half_width(long long successes, long long n, double level);

struct ChiSquareResult {
  double statistic = 0.0;
  int degrees_of_freedom = 0;
  double p_value = 1.0;
};

// Goodness of fit of observed counts against `expected`. Adjacent cells are
// pooled until each expects at least `min_expected` observations; values
// above the support of `expected` share a cell carrying its missing mass.
ChiSquareResult chi_square_gof(const std::map<int, long long>& observed,
                               const CountDistribution& expected,
                               double min_expected = 5.0);

// sup |F_n - F| for the empirical CDF of `samples` against continuous `cdf`.
double ks_statistic(std::vector<double> samples,
                    const std::function<double(double)>& cdf);

// Asymptotic Kolmogorov tail probability for statistic d over n samples.
double ks_p_value(double d, std::size_t n);

}  // namespace patrol

#endif  // PATROL_STATS_H_
