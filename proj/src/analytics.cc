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

#include "patrol/analytics.h"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

#include "patrol/errors.h"

namespace patrol {

CountDistribution::CountDistribution(std::map<int, double> pmf) {
  double total = 0.0;
  for (const auto& [n, mass] : pmf) {
    if (n < 0) throw ValidationError("count support must be nonnegative");
    if (!(mass >= 0.0) || !std::isfinite(mass)) {
      throw ValidationError("probability masses must be finite and >= 0");
    }
    total += mass;
    if (mass > 0.0) pmf_.emplace(n, mass);
  }
  if (std::abs(total - 1.0) > kMassTolerance) {
    throw ValidationError("probability masses sum to " + format_double(total) +
                          ", not 1");
  }
}

CountDistribution CountDistribution::point_mass(int n) {
  return CountDistribution({{n, 1.0}});
}

CountDistribution CountDistribution::from_counts(
    const std::map<int, long long>& counts) {
  long long total = 0;
  for (const auto& [n, c] : counts) total += c;
  if (total <= 0) throw ValidationError("empty sample");
  std::map<int, double> pmf;
  for (const auto& [n, c] : counts) {
    pmf[n] = static_cast<double>(c) / static_cast<double>(total);
  }
  return CountDistribution(std::move(pmf));
}

CountDistribution CountDistribution::truncated_poisson(double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) {
    throw ValidationError("Poisson mean must be finite and >= 0");
  }
  if (mean == 0.0) return point_mass(0);
  std::map<int, double> pmf;
  double log_mass = -mean;
  double tail = 1.0;
  for (int n = 0;; ++n) {
    if (n > 0) log_mass += std::log(mean) - std::log(static_cast<double>(n));
    pmf[n] = std::exp(log_mass);
    // P{N > n} = P(n + 1, mean), the regularized lower incomplete gamma.
    tail = boost::math::gamma_p(static_cast<double>(n + 1), mean);
    if (tail < 1e-13) break;
  }
  CountDistribution d(std::move(pmf));
  d.truncation_mass_ = tail;
  return d;
}

double CountDistribution::mass(int n) const {
  auto it = pmf_.find(n);
  return it == pmf_.end() ? 0.0 : it->second;
}

double CountDistribution::mean() const {
  double s = 0.0;
  for (const auto& [n, mass] : pmf_) s += n * mass;
  return s;
}

double CountDistribution::variance() const {
  const double mu = mean();
  double s = 0.0;
  for (const auto& [n, mass] : pmf_) s += (n - mu) * (n - mu) * mass;
  return s;
}

std::string CountDistribution::to_string() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [n, mass] : pmf_) {
    if (!first) os << ", ";
    first = false;
    os << n << ": " << format_double(mass);
  }
  os << '}';
  return os.str();
}

double game_value_cases(const GameParams& params) {
  const double q = 1.0 - params.p();
  const int m = params.m();
  const double r = params.r();
  if (r == 0.0) return 1.0 - std::pow(q, m);
  return 1.0 - r * std::pow(q, m + 1) - (1.0 - r) * std::pow(q, m);
}

double game_value_concise(const GameParams& params) {
  const double q = 1.0 - params.p();
  const double load = params.load();
  const double lo = std::floor(load);
  const double hi = std::ceil(load);
  return 1.0 - (load - lo) * std::pow(q, hi) - (1.0 - load + lo) * std::pow(q, lo);
}

double game_value(const GameParams& params) {
  const double cases = game_value_cases(params);
  const double concise = game_value_concise(params);
  if (std::abs(cases - concise) > 1e-12) {
    throw std::logic_error("value formulas disagree: " +
                           format_double(cases) + " vs " +
                           format_double(concise));
  }
  return cases;
}

CountDistribution optimal_count_distribution(double c) {
  if (!(c >= 0.0) || !std::isfinite(c)) {
    throw ValidationError("mean count must be finite and >= 0, got " +
                          format_double(c));
  }
  const double nearest = std::round(c);
  if (std::abs(c - nearest) < kIntegerGuard) {
    return CountDistribution::point_mass(static_cast<int>(nearest));
  }
  const double lo = std::floor(c);
  const double hi = std::ceil(c);
  return CountDistribution({{static_cast<int>(lo), hi - c},
                            {static_cast<int>(hi), c - lo}});
}

double expected_miss(const CountDistribution& d, double p) {
  const double q = 1.0 - p;
  double s = 0.0;
  for (const auto& [n, mass] : d.pmf()) s += mass * std::pow(q, n);
  return s;
}

LemmaOracleResult lemma_oracle(double c, double p, int max_support) {
  if (max_support < 0) throw ValidationError("max_support must be >= 0");
  if (!(c >= 0.0)) throw InfeasibleError("mean must be >= 0");
  if (c > max_support) {
    throw InfeasibleError("no distribution on {0.." +
                          std::to_string(max_support) + "} has mean " +
                          format_double(c));
  }
  const double q = 1.0 - p;
  double best = std::numeric_limits<double>::infinity();
  int best_lo = 0;
  int best_hi = 0;
  double best_weight_hi = 0.0;
  int examined = 0;
  for (int i = 0; i <= max_support; ++i) {
    if (i > c) break;
    for (int j = i; j <= max_support; ++j) {
      if (j < c) continue;
      double weight_hi;
      if (i == j) {
        if (static_cast<double>(i) != c) continue;
        weight_hi = 1.0;
      } else {
        weight_hi = (c - i) / static_cast<double>(j - i);
      }
      ++examined;
      double miss = (1.0 - weight_hi) * std::pow(q, i) + weight_hi * std::pow(q, j);
      if (miss < best) {
        best = miss;
        best_lo = i;
        best_hi = j;
        best_weight_hi = weight_hi;
      }
    }
  }
  std::map<int, double> pmf;
  pmf[best_lo] += 1.0 - best_weight_hi;
  pmf[best_hi] += best_weight_hi;
  return {best, CountDistribution(std::move(pmf)), examined};
}

double poisson_detection(const GameParams& params) {
  return -std::expm1(-params.p() * params.lambda() * params.t());
}

}  // namespace patrol
