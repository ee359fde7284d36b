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

#include "patrol/stats.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "patrol/errors.h"

namespace patrol {

double z_for_level(double level) {
  if (!(level > 0.0 && level < 1.0)) {
    throw ValidationError("confidence level must lie in (0, 1)");
  }
  const boost::math::normal standard;
  return boost::math::quantile(standard, 0.5 + level / 2.0);
}

double binomial_ci_half_width(long long successes, long long n, double level) {
  if (n <= 0) throw ValidationError("need at least one trial");
  const double z = z_for_level(level);
  const double nd = static_cast<double>(n);
  const double phat = static_cast<double>(successes) / nd;
  if (successes != 0 && successes != n) {
    return z * std::sqrt(phat * (1.0 - phat) / nd);
  }
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nd;
  return z / denom * std::sqrt(phat * (1.0 - phat) / nd + z2 / (4.0 * nd * nd));
}

ChiSquareResult chi_square_gof(const std::map<int, long long>& observed,
                               const CountDistribution& expected,
                               double min_expected) {
  long long total = 0;
  int top = 0;
  for (const auto& [n, c] : observed) {
    total += c;
    top = std::max(top, n);
  }
  if (total <= 0) throw ValidationError("chi-square test needs observations");
  int support_top = 0;
  double covered = 0.0;
  for (const auto& [n, mass] : expected.pmf()) {
    support_top = std::max(support_top, n);
    covered += mass;
  }

  struct Cell {
    double expected = 0.0;
    double observed = 0.0;
  };
  std::vector<Cell> cells;
  for (int n = 0; n <= support_top; ++n) {
    auto it = observed.find(n);
    cells.push_back({expected.mass(n) * total,
                     it == observed.end() ? 0.0 : static_cast<double>(it->second)});
  }
  Cell overflow{std::max(0.0, 1.0 - covered) * total, 0.0};
  for (const auto& [n, c] : observed) {
    if (n > support_top) overflow.observed += static_cast<double>(c);
  }
  cells.push_back(overflow);

  ChiSquareResult result;
  // A count the model gives no mass at all rejects it outright; pooling
  // would otherwise hide it in a neighbouring cell.
  for (const Cell& c : cells) {
    if (c.expected <= 0.0 && c.observed > 0.0) {
      result.statistic = std::numeric_limits<double>::infinity();
      result.p_value = 0.0;
      return result;
    }
  }

  std::vector<Cell> pooled;
  Cell acc;
  for (const Cell& c : cells) {
    acc.expected += c.expected;
    acc.observed += c.observed;
    if (acc.expected >= min_expected) {
      pooled.push_back(acc);
      acc = Cell{};
    }
  }
  if (acc.expected > 0.0 || acc.observed > 0.0) {
    if (pooled.empty()) {
      pooled.push_back(acc);
    } else {
      pooled.back().expected += acc.expected;
      pooled.back().observed += acc.observed;
    }
  }

  result.degrees_of_freedom = static_cast<int>(pooled.size()) - 1;
  for (const Cell& c : pooled) {
    if (c.expected <= 0.0) continue;
    const double d = c.observed - c.expected;
    result.statistic += d * d / c.expected;
  }
  if (result.degrees_of_freedom <= 0) {
    result.p_value = 1.0;
    return result;
  }
  result.p_value = boost::math::gamma_q(result.degrees_of_freedom / 2.0,
                                        result.statistic / 2.0);
  return result;
}

double ks_statistic(std::vector<double> samples,
                    const std::function<double(double)>& cdf) {
  if (samples.empty()) throw ValidationError("KS test needs samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max(d, (static_cast<double>(i) + 1.0) / n - f);
    d = std::max(d, f - static_cast<double>(i) / n);
  }
  return d;
}

double ks_p_value(double d, std::size_t n) {
  const double rn = std::sqrt(static_cast<double>(n));
  const double lambda = (rn + 0.12 + 0.11 / rn) * d;
  if (lambda < 0.2) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = sign * std::exp(-2.0 * k * k * lambda * lambda);
    sum += term;
    if (std::abs(term) < 1e-12) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

}  // namespace patrol
