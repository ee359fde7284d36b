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

#include "doctest.h"
#include "patrol/errors.h"
#include "patrol/rng.h"

namespace patrol {
namespace {

// Independent of the library: every distribution on {0..K} that puts weight
// on at most three points and has mean c, scanned on a weight grid. Used to
// confirm nothing beats the two-point law.
double three_point_scan_minimum(double c, double p, int max_support) {
  const double q = 1.0 - p;
  double best = 1.0;
  for (int a = 0; a <= max_support; ++a) {
    for (int b = a + 1; b <= max_support; ++b) {
      for (int e = b + 1; e <= max_support; ++e) {
        for (int step = 0; step <= 20; ++step) {
          // Fix the middle weight, solve the two outer weights for mean c.
          const double wb = step / 20.0;
          const double rest = 1.0 - wb;
          if (rest <= 0.0) continue;
          const double mean_rest = (c - wb * b) / rest;
          if (mean_rest < a || mean_rest > e) continue;
          const double we = rest * (mean_rest - a) / (e - a);
          const double wa = rest - we;
          best = std::min(best, wa * std::pow(q, a) + wb * std::pow(q, b) +
                                    we * std::pow(q, e));
        }
      }
    }
  }
  return best;
}

TEST_CASE("game value examples") {
  // 1 - 0.2 * 0.5^4 - 0.8 * 0.5^3
  CHECK(game_value(GameParams(1.0, 3.2, 0.5)) == doctest::Approx(0.8875).epsilon(1e-12));
  CHECK(game_value(GameParams(2.0, 1.5, 0.5)) == doctest::Approx(0.875).epsilon(1e-12));
  CHECK(game_value(GameParams(1.0, 0.5, 1.0)) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(game_value(GameParams(1.0, 0.4, 1.0)) == doctest::Approx(0.4).epsilon(1e-12));
  for (double lt : {1.0, 1.7, 3.0, 12.25}) {
    CHECK(game_value(GameParams(1.0, lt, 1.0)) == 1.0);
  }
}

TEST_CASE("case form and concise form agree") {
  Rng rng(2024);
  for (int i = 0; i < 10000; ++i) {
    const GameParams g(rng.uniform(0.01, 10.0), rng.uniform(0.01, 10.0),
                       rng.uniform(1e-6, 1.0));
    CHECK(std::abs(game_value_cases(g) - game_value_concise(g)) <= 1e-12);
  }
}

TEST_CASE("game value composes through the two-point law") {
  Rng rng(99);
  for (int i = 0; i < 2000; ++i) {
    const GameParams g(rng.uniform(0.05, 5.0), rng.uniform(0.05, 5.0),
                       rng.uniform(0.01, 1.0));
    const double via_lemma =
        1.0 - expected_miss(optimal_count_distribution(g.load()), g.p());
    CHECK(std::abs(game_value(g) - via_lemma) <= 1e-12);
  }
}

TEST_CASE("game value is nondecreasing in p, lambda and t") {
  Rng rng(17);
  for (int i = 0; i < 5000; ++i) {
    const double l = rng.uniform(0.05, 5.0);
    const double t = rng.uniform(0.05, 5.0);
    const double p = rng.uniform(0.01, 0.99);
    const double v = game_value(GameParams(l, t, p));
    CHECK(game_value(GameParams(l, t, rng.uniform(p, 1.0))) >= v - 1e-15);
    CHECK(game_value(GameParams(rng.uniform(l, 6.0), t, p)) >= v - 1e-15);
    CHECK(game_value(GameParams(l, rng.uniform(t, 6.0), p)) >= v - 1e-15);
  }
}

TEST_CASE("optimal_count_distribution") {
  const CountDistribution d = optimal_count_distribution(3.2);
  CHECK(d.pmf().size() == 2);
  CHECK(d.mass(3) == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(d.mass(4) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(d.mean() == doctest::Approx(3.2).epsilon(1e-14));

  const CountDistribution integer = optimal_count_distribution(3.0);
  CHECK(integer.pmf().size() == 1);
  CHECK(integer.mass(3) == 1.0);

  const CountDistribution half = optimal_count_distribution(0.5);
  CHECK(half.mass(0) == 0.5);
  CHECK(half.mass(1) == 0.5);

  CHECK_THROWS_AS(optimal_count_distribution(-0.1), ValidationError);
}

TEST_CASE("expected_miss examples") {
  CHECK(expected_miss(CountDistribution({{3, 0.8}, {4, 0.2}}), 0.5) ==
        doctest::Approx(0.1125).epsilon(1e-14));
  CHECK(expected_miss(CountDistribution::point_mass(0), 0.3) == 1.0);
  // Poisson pgf E[z^N] = exp(c (z - 1)) at z = 0.5.
  const CountDistribution poisson = CountDistribution::truncated_poisson(1.6);
  CHECK(poisson.truncation_mass() < 1e-12);
  CHECK(std::abs(expected_miss(poisson, 0.5) - std::exp(-0.8)) < 1e-12);
  CHECK(std::abs(poisson.mean() - 1.6) < 1e-10);
}

TEST_CASE("CountDistribution rejects bad masses") {
  CHECK_THROWS_AS(CountDistribution({{0, 0.5}, {1, 0.4}}), ValidationError);
  CHECK_THROWS_AS(CountDistribution({{0, 1.5}, {1, -0.5}}), ValidationError);
  CHECK_THROWS_AS(CountDistribution({{-1, 1.0}}), ValidationError);
  CHECK(CountDistribution::from_counts({{2, 3}, {5, 1}}).mass(2) == 0.75);
}

TEST_CASE("lemma_oracle examples") {
  const LemmaOracleResult r = lemma_oracle(3.2, 0.5, 10);
  CHECK(r.minimum_miss == doctest::Approx(0.1125).epsilon(1e-12));
  CHECK(r.minimizer.mass(3) == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(r.minimizer.mass(4) == doctest::Approx(0.2).epsilon(1e-12));

  const LemmaOracleResult zero = lemma_oracle(0.0, 0.7, 5);
  CHECK(zero.minimum_miss == 1.0);
  CHECK(zero.minimizer.mass(0) == 1.0);

  const LemmaOracleResult point = lemma_oracle(2.0, 0.3, 12);
  CHECK(point.minimizer.pmf().size() == 1);
  CHECK(point.minimizer.mass(2) == 1.0);

  CHECK_THROWS_AS(lemma_oracle(11.0, 0.5, 10), InfeasibleError);
}

TEST_CASE("lemma oracle matches the closed form and no scanned law beats it") {
  Rng rng(4242);
  for (int i = 0; i < 200; ++i) {
    const double c = rng.uniform(0.0, 10.0);
    const double p = rng.uniform(0.01, 0.99);
    const double closed = expected_miss(optimal_count_distribution(c), p);
    const LemmaOracleResult oracle = lemma_oracle(c, p, 12);
    CHECK(std::abs(oracle.minimum_miss - closed) <= 1e-12);
    if (i < 20) CHECK(three_point_scan_minimum(c, p, 12) >= closed - 1e-12);
  }
}

TEST_CASE("lemma at p = 1 ties on P{N = 0}") {
  const LemmaOracleResult r = lemma_oracle(2.5, 1.0, 10);
  CHECK(r.minimum_miss == 0.0);
  CHECK(expected_miss(optimal_count_distribution(2.5), 1.0) == 0.0);
}

TEST_CASE("Poisson counts are suboptimal") {
  Rng rng(8);
  for (int i = 0; i < 200; ++i) {
    const double c = rng.uniform(0.05, 10.0);
    const double p = rng.uniform(0.01, 0.99);
    const double poisson = expected_miss(CountDistribution::truncated_poisson(c), p);
    CHECK(poisson > lemma_oracle(c, p, 60).minimum_miss);
  }
}

TEST_CASE("poisson_detection") {
  CHECK(poisson_detection(GameParams(1.0, 3.2, 0.5)) ==
        doctest::Approx(1.0 - std::exp(-1.6)).epsilon(1e-14));
  CHECK(poisson_detection(GameParams(1.0, 3.2, 0.5)) == doctest::Approx(0.79810).epsilon(1e-5));
  CHECK(poisson_detection(GameParams(10.0, 10.0, 1.0)) == doctest::Approx(1.0));
  CHECK(poisson_detection(GameParams(1e-8, 1e-8, 0.5)) < 1e-15);
  Rng rng(31);
  for (int i = 0; i < 2000; ++i) {
    const GameParams g(rng.uniform(0.05, 5.0), rng.uniform(0.05, 5.0),
                       rng.uniform(0.01, 0.99));
    CHECK(poisson_detection(g) < game_value(g));
  }
}

}  // namespace
}  // namespace patrol
