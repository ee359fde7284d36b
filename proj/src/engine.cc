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

#include "patrol/engine.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <sstream>
#include <thread>

#include "patrol/errors.h"
#include "patrol/stats.h"

namespace patrol {
namespace {

constexpr int kMaxHorizonDoublings = 40;

struct Group {
  const ScheduleGenerator* generator;
  std::vector<AttackerStrategy> strategies;
};

struct Outcome {
  int passes = 0;
  bool detected = false;
};

// Integer tallies only, so merging is exact and order-independent.
struct Tally {
  std::vector<long long> detections;
  std::vector<std::vector<long long>> counts;
  // only_first[i * k + j]: replications where i detected and j did not.
  std::vector<long long> only_first;
  bool track_pairs = false;

  Tally(std::size_t k, bool pairs)
      : detections(k, 0), counts(k), track_pairs(pairs) {
    if (pairs) only_first.assign(k * k, 0);
  }

  void add(const std::vector<Outcome>& out) {
    const std::size_t k = out.size();
    for (std::size_t i = 0; i < k; ++i) {
      if (out[i].detected) ++detections[i];
      auto& c = counts[i];
      if (c.size() <= static_cast<std::size_t>(out[i].passes)) {
        c.resize(out[i].passes + 1, 0);
      }
      ++c[out[i].passes];
    }
    if (!track_pairs) return;
    for (std::size_t i = 0; i < k; ++i) {
      if (!out[i].detected) continue;
      for (std::size_t j = 0; j < k; ++j) {
        if (!out[j].detected) ++only_first[i * k + j];
      }
    }
  }

  void merge(const Tally& o) {
    for (std::size_t i = 0; i < detections.size(); ++i) {
      detections[i] += o.detections[i];
      auto& c = counts[i];
      if (c.size() < o.counts[i].size()) c.resize(o.counts[i].size(), 0);
      for (std::size_t n = 0; n < o.counts[i].size(); ++n) {
        c[n] += o.counts[i][n];
      }
    }
    for (std::size_t i = 0; i < only_first.size(); ++i) {
      only_first[i] += o.only_first[i];
    }
  }
};

AttackSetting setting_for(const ScheduleGenerator& g, const GameParams& params,
                          const EngineOptions& options) {
  const double period = g.cycle_length();
  return AttackSetting{options.point, params.t(),
                       options.burn_in_cycles * period, period};
}

// One replication of every group. Groups sharing a generator see the same
// realization because the schedule substream depends only on (seed, rep).
void run_replication(const std::vector<Group>& groups,
                     const GameParams& params, const EngineOptions& options,
                     std::uint64_t seed, std::uint64_t rep,
                     std::vector<Outcome>& out) {
  std::size_t slot = 0;
  for (const Group& group : groups) {
    const ScheduleGenerator& gen = *group.generator;
    const AttackSetting setting = setting_for(gen, params, options);
    double horizon = 0.0;
    for (const auto& s : group.strategies) {
      horizon = std::max(horizon, horizon_hint(s, setting, gen.dispatch_rate()));
    }
    for (int attempt = 0;; ++attempt) {
      try {
        Rng schedule_rng(seed, rep, StreamPurpose::kSchedule);
        const ScheduleRealization realization =
            gen.sample(horizon, schedule_rng);
        for (std::size_t i = 0; i < group.strategies.size(); ++i) {
          Rng attacker_rng(seed, rep, StreamPurpose::kAttacker);
          const AttackWindow w = choose_window(group.strategies[i], realization,
                                               setting, attacker_rng);
          out[slot + i].passes = count_passes(realization, w);
        }
        break;
      } catch (const RuntimeError&) {
        // Sampling is prefix-stable in the horizon, so a longer horizon only
        // appends dispatches to the same realization.
        if (attempt >= kMaxHorizonDoublings) throw;
        horizon *= 2.0;
      }
    }
    for (std::size_t i = 0; i < group.strategies.size(); ++i) {
      // One Bernoulli(p) draw per pass; the same draws for every candidate.
      Rng detection_rng(seed, rep, StreamPurpose::kDetection);
      bool detected = false;
      for (int n = 0; n < out[slot + i].passes; ++n) {
        if (detection_rng.bernoulli(params.p())) detected = true;
      }
      out[slot + i].detected = detected;
    }
    slot += group.strategies.size();
  }
}

Tally run(const std::vector<Group>& groups, const GameParams& params,
          const EngineOptions& options, long long replications,
          std::uint64_t seed, bool track_pairs) {
  if (replications < 1) throw ValidationError("replications must be >= 1");
  std::size_t k = 0;
  for (const auto& g : groups) k += g.strategies.size();
  if (k == 0) throw ValidationError("nothing to simulate");

  int workers = options.workers > 0
                    ? options.workers
                    : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp<long long>(workers, 1, replications);

  std::vector<Tally> partial(workers, Tally(k, track_pairs));
  std::vector<std::exception_ptr> errors(workers);
  auto work = [&](int w) {
    try {
      const long long begin = replications * w / workers;
      const long long end = replications * (w + 1) / workers;
      std::vector<Outcome> out(k);
      for (long long rep = begin; rep < end; ++rep) {
        run_replication(groups, params, options, seed,
                        static_cast<std::uint64_t>(rep), out);
        partial[w].add(out);
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (int w = 0; w < workers; ++w) threads.emplace_back(work, w);
    for (auto& th : threads) th.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  Tally total(k, track_pairs);
  for (const auto& p : partial) total.merge(p);
  return total;
}

SimulationResult make_result(const Tally& tally, std::size_t i,
                             const ScheduleGenerator& gen,
                             const AttackerStrategy& strategy,
                             const GameParams& params, long long replications,
                             std::uint64_t seed, const EngineOptions& options) {
  SimulationResult r;
  r.replications = replications;
  r.detections = tally.detections[i];
  r.estimate = static_cast<double>(r.detections) / replications;
  r.ci_level = options.level;
  r.ci_half_width =
      binomial_ci_half_width(r.detections, replications, options.level);
  for (std::size_t n = 0; n < tally.counts[i].size(); ++n) {
    if (tally.counts[i][n] > 0) r.pass_counts[static_cast<int>(n)] = tally.counts[i][n];
  }
  r.seed = seed;
  r.generator = gen.name();
  r.strategy = strategy.to_string();
  r.lambda = params.lambda();
  r.t = params.t();
  r.p = params.p();
  return r;
}

}  // namespace

double SimulationResult::standard_error() const {
  return ci_half_width / z_for_level(ci_level);
}

CountDistribution SimulationResult::pass_pmf() const {
  return CountDistribution::from_counts(pass_counts);
}

double SimulationResult::mean_passes() const {
  double s = 0.0;
  for (const auto& [n, c] : pass_counts) s += static_cast<double>(n) * c;
  return s / static_cast<double>(replications);
}

double SimulationResult::mean_passes_standard_error() const {
  const double mu = mean_passes();
  double ss = 0.0;
  for (const auto& [n, c] : pass_counts) ss += (n - mu) * (n - mu) * c;
  const double nd = static_cast<double>(replications);
  if (replications < 2) return 0.0;
  return std::sqrt(ss / (nd - 1.0) / nd);
}

SimulationResult estimate_detection(const ScheduleGenerator& generator,
                                    const AttackerStrategy& strategy,
                                    const GameParams& params,
                                    long long replications, std::uint64_t seed,
                                    const EngineOptions& options) {
  return estimate_family(generator, {strategy}, params, replications, seed,
                         options)
      .front();
}

CountDistribution empirical_pass_pmf(const ScheduleGenerator& generator,
                                     const AttackerStrategy& strategy,
                                     const GameParams& params,
                                     long long replications, std::uint64_t seed,
                                     const EngineOptions& options) {
  return estimate_detection(generator, strategy, params, replications, seed,
                            options)
      .pass_pmf();
}

std::vector<SimulationResult> estimate_family(
    const ScheduleGenerator& generator,
    const std::vector<AttackerStrategy>& strategies, const GameParams& params,
    long long replications, std::uint64_t seed, const EngineOptions& options) {
  const std::vector<Group> groups{{&generator, strategies}};
  const Tally tally = run(groups, params, options, replications, seed, false);
  std::vector<SimulationResult> results;
  for (std::size_t i = 0; i < strategies.size(); ++i) {
    results.push_back(make_result(tally, i, generator, strategies[i], params,
                                  replications, seed, options));
  }
  return results;
}

ComparisonTable compare_strategies(const std::vector<Contender>& contenders,
                                   const GameParams& params,
                                   long long replications, std::uint64_t seed,
                                   const EngineOptions& options) {
  std::vector<Group> groups;
  for (const auto& c : contenders) groups.push_back({&c.generator, {c.strategy}});
  const Tally tally = run(groups, params, options, replications, seed, true);

  ComparisonTable table;
  const std::size_t k = contenders.size();
  for (std::size_t i = 0; i < k; ++i) {
    table.results.push_back(make_result(tally, i, contenders[i].generator,
                                        contenders[i].strategy, params,
                                        replications, seed, options));
  }
  table.ranking.resize(k);
  std::iota(table.ranking.begin(), table.ranking.end(), 0);
  std::stable_sort(table.ranking.begin(), table.ranking.end(),
                   [&](std::size_t a, std::size_t b) {
                     return table.results[a].detections >
                            table.results[b].detections;
                   });
  const double z = z_for_level(options.level);
  const double n = static_cast<double>(replications);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      // Paired differences take values in {-1, 0, 1}.
      const double a = static_cast<double>(tally.only_first[i * k + j]);
      const double b = static_cast<double>(tally.only_first[j * k + i]);
      const double mean = (a - b) / n;
      double hw = 0.0;
      if (replications > 1) {
        const double var = ((a + b) / n - mean * mean) * n / (n - 1.0);
        hw = z * std::sqrt(std::max(0.0, var) / n);
      }
      table.differences.push_back({i, j, mean, hw});
    }
  }
  return table;
}

std::vector<AttackerStrategy> default_family(const GameParams& params) {
  std::vector<AttackerStrategy> family;
  family.push_back(AttackerStrategy::stationary());
  for (int i = 0; i < kPhaseGridSize; ++i) {
    family.push_back(AttackerStrategy::swept_phase(i));
  }
  const int m = params.m();
  const double delta = params.delta();
  for (int k = 1; k <= 2 * (m + 1); ++k) {
    for (int d = 0; d <= 8; ++d) {
      family.push_back(AttackerStrategy::after_pass(k, delta * d / 8.0));
    }
  }
  return family;
}

BestResponseResult best_response_search(
    const ScheduleGenerator& generator, const GameParams& params,
    const std::vector<AttackerStrategy>& family, long long replications,
    std::uint64_t seed, const EngineOptions& options) {
  if (family.empty()) throw ValidationError("strategy family is empty");
  BestResponseResult result;
  result.candidates =
      estimate_family(generator, family, params, replications, seed, options);
  for (std::size_t i = 1; i < result.candidates.size(); ++i) {
    if (result.candidates[i].detections <
        result.candidates[result.best].detections) {
      result.best = i;
    }
  }
  return result;
}

nlohmann::json to_json(const SimulationResult& r) {
  nlohmann::json pmf = nlohmann::json::object();
  for (const auto& [n, c] : r.pass_counts) pmf[std::to_string(n)] = c;
  return {{"schema_version", kResultSchemaVersion},
          {"generator", r.generator},
          {"strategy", r.strategy},
          {"lambda", r.lambda},
          {"t", r.t},
          {"p", r.p},
          {"seed", r.seed},
          {"replications", r.replications},
          {"detections", r.detections},
          {"estimate", r.estimate},
          {"ci_half_width", r.ci_half_width},
          {"ci_level", r.ci_level},
          {"mean_passes", r.mean_passes()},
          {"pass_counts", pmf}};
}

std::string csv_header() {
  return "estimate,ci,replications,seed,generator,strategy,lambda,t,p";
}

std::string to_csv_row(const SimulationResult& r) {
  std::ostringstream os;
  os << format_double(r.estimate) << ',' << format_double(r.ci_half_width)
     << ',' << r.replications << ',' << r.seed << ',' << r.generator << ','
     << r.strategy << ',' << format_double(r.lambda) << ','
     << format_double(r.t) << ',' << format_double(r.p);
  return os.str();
}

}  // namespace patrol
