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

#include <cmath>

#include "doctest.h"
#include "patrol/rng.h"

namespace patrol {
namespace {

TEST_CASE("normal quantiles") {
  CHECK(z_for_level(0.95) == doctest::Approx(1.959963985).epsilon(1e-9));
  CHECK(z_for_level(0.99) == doctest::Approx(2.575829304).epsilon(1e-9));
}

TEST_CASE("binomial half widths") {
  CHECK(binomial_ci_half_width(500, 1000, 0.95) ==
        doctest::Approx(1.959963985 * std::sqrt(0.25 / 1000)));
  // Wilson at the boundary: z^2 / (2 (n + z^2)).
  const double z = 1.959963985;
  CHECK(binomial_ci_half_width(0, 100, 0.95) ==
        doctest::Approx(z * z / (2 * (100 + z * z))).epsilon(1e-9));
  CHECK(binomial_ci_half_width(100, 100, 0.95) ==
        binomial_ci_half_width(0, 100, 0.95));
  CHECK(binomial_ci_half_width(1, 100, 0.95) > 0.0);
}

TEST_CASE("chi-square goodness of fit") {
  const CountDistribution d({{3, 0.5}, {4, 0.5}});
  // 1000 draws, 530/470: statistic 3.6, one degree of freedom.
  const ChiSquareResult r = chi_square_gof({{3, 530}, {4, 470}}, d);
  CHECK(r.statistic == doctest::Approx(3.6));
  CHECK(r.degrees_of_freedom == 1);
  CHECK(r.p_value == doctest::Approx(0.0577795).epsilon(1e-5));

  const ChiSquareResult exact = chi_square_gof({{3, 500}, {4, 500}}, d);
  CHECK(exact.statistic == 0.0);
  CHECK(exact.p_value == doctest::Approx(1.0));

  // A count outside the support is impossible under the model.
  const ChiSquareResult bad = chi_square_gof({{3, 500}, {4, 499}, {7, 1}}, d);
  CHECK(bad.p_value == 0.0);
  CHECK(chi_square_gof({{2, 1}, {3, 500}, {4, 499}}, d).p_value == 0.0);
}

TEST_CASE("chi-square pools sparse cells") {
  const CountDistribution pois = CountDistribution::truncated_poisson(2.0);
  Rng rng(1);
  std::map<int, long long> observed;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    // Count unit-rate arrivals before 2.
    int k = 0;
    double s = rng.exponential(1.0);
    while (s < 2.0) {
      ++k;
      s += rng.exponential(1.0);
    }
    ++observed[k];
  }
  const ChiSquareResult r = chi_square_gof(observed, pois);
  CHECK(r.degrees_of_freedom >= 6);
  CHECK(r.p_value > 0.001);
}

TEST_CASE("Kolmogorov-Smirnov") {
  CHECK(ks_statistic({0.5}, [](double x) { return x; }) == doctest::Approx(0.5));
  CHECK(ks_statistic({0.25, 0.75}, [](double x) { return x; }) == doctest::Approx(0.25));
  // The 5% critical value is about 1.358 / sqrt(n).
  CHECK(ks_p_value(1.3581 / std::sqrt(1000.0), 1000) ==
        doctest::Approx(0.05).epsilon(0.05));
  CHECK(ks_p_value(0.0, 10) == doctest::Approx(1.0));
  CHECK(ks_p_value(0.5, 1000) < 1e-10);

  Rng rng(2);
  std::vector<double> u(5000);
  for (double& x : u) x = rng.uniform();
  CHECK(ks_p_value(ks_statistic(u, [](double x) { return x; }), u.size()) > 0.01);
}

}  // namespace
}  // namespace patrol
