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

#include "patrol/cli.h"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "patrol/analytics.h"
#include "patrol/attackers.h"
#include "patrol/engine.h"
#include "patrol/errors.h"
#include "patrol/schedule_spec.h"
#include "patrol/schedules.h"

namespace patrol {
namespace {

using nlohmann::json;

inline constexpr int kOutputSchemaVersion = 1;

// Twelve significant digits: enough to read, short enough to hide the last
// bits of floating masses such as 4 - 3.2.
std::string display(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

std::string display(const CountDistribution& d) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [n, mass] : d.pmf()) {
    if (!first) os << ", ";
    first = false;
    os << n << ": " << display(mass);
  }
  os << '}';
  return os.str();
}

json pmf_json(const CountDistribution& d) {
  json j = json::object();
  for (const auto& [n, mass] : d.pmf()) j[std::to_string(n)] = mass;
  return j;
}

// Resolved settings of a simulate / best-response / compare run. Everything
// here is echoed with the results.
struct ExperimentConfig {
  std::string command;
  double lambda = 1.0;
  double t = 1.0;
  double p = 0.5;
  std::string generator = "optimal";
  std::optional<json> schedule;  // inline schedule spec for `file`
  std::string schedule_path;
  std::string strategy = "stationary";
  std::vector<std::string> contenders;  // compare: "<generator>,<strategy>"
  long long replications = 100000;
  std::uint64_t seed = 42;
  double point = 0.25;
  double burn_in_cycles = 100.0;
  int workers = 0;
  std::string format = "csv";
  std::string output;
};

json to_json(const ExperimentConfig& c) {
  json j = {{"command", c.command},
            {"lambda", c.lambda},
            {"t", c.t},
            {"p", c.p},
            {"generator", c.generator},
            {"replications", c.replications},
            {"seed", c.seed},
            {"point", c.point},
            {"burn_in_cycles", c.burn_in_cycles},
            {"format", c.format}};
  if (c.command == "simulate") j["strategy"] = c.strategy;
  if (c.schedule) j["schedule"] = *c.schedule;
  if (!c.contenders.empty()) j["contenders"] = c.contenders;
  return j;
}

void load_config_file(const std::string& path, ExperimentConfig& c,
                      const std::set<std::string>& given) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("config " + path + " is not valid JSON: " + e.what());
  }
  static const std::set<std::string> allowed = {
      "schema_version", "command",     "lambda",         "t",
      "p",              "generator",   "schedule",       "strategy",
      "contenders",     "replications", "seed",          "point",
      "burn_in_cycles", "workers",     "format",         "output",
      "description"};
  if (!doc.is_object()) throw ParseError("config must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (!allowed.count(key)) {
      throw ParseError("unknown field '" + key + "' in config " + path);
    }
  }
  if (doc.contains("schema_version") &&
      doc.at("schema_version") != kOutputSchemaVersion) {
    throw ParseError("unsupported config schema_version");
  }
  if (doc.contains("command") && doc.at("command") != c.command) {
    throw ValidationError("config " + path + " is for '" +
                          doc.at("command").get<std::string>() + "', not '" +
                          c.command + "'");
  }
  auto take = [&](const char* key, auto& field) {
    if (!doc.contains(key) || given.count(key)) return;
    try {
      field = doc.at(key).get<std::decay_t<decltype(field)>>();
    } catch (const json::exception&) {
      throw ParseError(std::string("config field '") + key +
                       "' has the wrong type");
    }
  };
  take("lambda", c.lambda);
  take("t", c.t);
  take("p", c.p);
  take("generator", c.generator);
  take("strategy", c.strategy);
  take("contenders", c.contenders);
  take("replications", c.replications);
  take("seed", c.seed);
  take("point", c.point);
  take("burn_in_cycles", c.burn_in_cycles);
  take("workers", c.workers);
  take("format", c.format);
  take("output", c.output);
  if (doc.contains("schedule") && !given.count("schedule")) {
    const json& s = doc.at("schedule");
    if (s.is_string()) {
      // Relative to the config file.
      std::filesystem::path p = s.get<std::string>();
      if (p.is_relative()) p = std::filesystem::path(path).parent_path() / p;
      c.schedule_path = p.string();
    } else {
      c.schedule = s;
    }
  }
}

ScheduleGenerator resolve_generator(const std::string& name,
                                    const ExperimentConfig& c,
                                    const GameParams& params) {
  if (name == "file" || name.rfind("file:", 0) == 0) {
    std::string path = name == "file" ? c.schedule_path : name.substr(5);
    if (name == "file" && c.schedule) {
      return load_schedule_spec(*c.schedule).with_label("file");
    }
    if (path.empty()) {
      throw ValidationError("generator 'file' needs --schedule <spec.json>");
    }
    return load_schedule_spec_file(path);
  }
  return ScheduleGenerator::by_name(name, params);
}

EngineOptions engine_options(const ExperimentConfig& c) {
  if (c.workers < 0) throw ValidationError("workers must be >= 0");
  if (!(c.burn_in_cycles >= 0.0)) {
    throw ValidationError("burn_in_cycles must be >= 0");
  }
  EngineOptions o;
  o.point = PerimeterPoint(c.point);
  o.burn_in_cycles = c.burn_in_cycles;
  o.workers = c.workers;
  return o;
}

void check_format(const std::string& f) {
  if (f != "csv" && f != "json") {
    throw ValidationError("format must be csv or json, got '" + f + "'");
  }
}

// Writes to --output when given, else to `out`.
void emit(const ExperimentConfig& c, const std::string& payload,
          std::ostream& out) {
  if (c.output.empty()) {
    out << payload;
    return;
  }
  std::ofstream file(c.output);
  if (!file) throw RuntimeError("cannot write " + c.output);
  file << payload;
}

void add_game_options(CLI::App* cmd, ExperimentConfig& c) {
  cmd->add_option("--lambda", c.lambda, "Dispatch-rate cap");
  cmd->add_option("--t", c.t, "Attack duration");
  cmd->add_option("--p", c.p, "Per-pass detection probability");
}

void add_experiment_options(CLI::App* cmd, ExperimentConfig& c,
                            std::string& config_path) {
  add_game_options(cmd, c);
  cmd->add_option("--generator", c.generator,
                  "optimal, deterministic, poisson, uniform-offset, file "
                  "or file:<spec.json>");
  cmd->add_option("--schedule", c.schedule_path,
                  "Schedule spec for --generator file");
  cmd->add_option("--replications", c.replications, "Monte Carlo replications");
  cmd->add_option("--seed", c.seed, "Random seed");
  cmd->add_option("--point", c.point, "Attack position on the perimeter");
  cmd->add_option("--burn-in", c.burn_in_cycles, "Burn-in, in schedule cycles");
  cmd->add_option("--workers", c.workers, "Worker threads (0 = all cores)");
  cmd->add_option("--format", c.format, "csv or json");
  cmd->add_option("--output", c.output, "Write results to this file");
  cmd->add_option("--config", config_path, "Experiment config (JSON)");
}

std::set<std::string> given_options(const CLI::App* cmd) {
  static const std::map<std::string, std::string> to_field = {
      {"--lambda", "lambda"},
      {"--t", "t"},
      {"--p", "p"},
      {"--generator", "generator"},
      {"--schedule", "schedule"},
      {"--strategy", "strategy"},
      {"--contender", "contenders"},
      {"--replications", "replications"},
      {"--seed", "seed"},
      {"--point", "point"},
      {"--burn-in", "burn_in_cycles"},
      {"--workers", "workers"},
      {"--format", "format"},
      {"--output", "output"}};
  std::set<std::string> given;
  for (const auto& [flag, field] : to_field) {
    try {
      if (cmd->count(flag) > 0) given.insert(field);
    } catch (const CLI::OptionNotFound&) {
    }
  }
  return given;
}

std::string csv_with_config(const ExperimentConfig& c,
                            const std::vector<SimulationResult>& rows) {
  std::ostringstream os;
  os << "# config: " << to_json(c).dump() << '\n';
  os << csv_header() << '\n';
  for (const auto& r : rows) os << to_csv_row(r) << '\n';
  return os.str();
}

int cmd_value(const ExperimentConfig& c, const std::string& format,
              std::ostream& out) {
  const GameParams params(c.lambda, c.t, c.p);
  const double v = game_value(params);
  const char* branch = params.r() == 0.0 ? "r = 0" : "r > 0";
  if (format == "json") {
    out << json{{"schema_version", kOutputSchemaVersion},
                {"command", "value"},
                {"lambda", params.lambda()},
                {"t", params.t()},
                {"p", params.p()},
                {"value", v},
                {"m", params.m()},
                {"r", params.r()},
                {"branch", branch},
                {"case_form", game_value_cases(params)},
                {"concise_form", game_value_concise(params)}}
               .dump(2)
        << '\n';
    return kExitOk;
  }
  out << "V = " << display(v) << '\n'
      << "m = " << params.m() << '\n'
      << "r = " << display(params.r()) << '\n'
      << "branch = " << branch << '\n'
      << "case_form = " << format_double(game_value_cases(params)) << '\n'
      << "concise_form = " << format_double(game_value_concise(params)) << '\n';
  return kExitOk;
}

int cmd_lemma(double c, double p, int max_support, const std::string& format,
              std::ostream& out) {
  if (!(p > 0.0 && p <= 1.0)) throw ValidationError("p must lie in (0, 1]");
  const CountDistribution closed = optimal_count_distribution(c);
  const double closed_miss = expected_miss(closed, p);
  const LemmaOracleResult oracle = lemma_oracle(c, p, max_support);
  bool agree = std::abs(oracle.minimum_miss - closed_miss) <= 1e-12;
  bool same_law = closed.pmf().size() == oracle.minimizer.pmf().size();
  if (same_law) {
    for (const auto& [n, mass] : closed.pmf()) {
      if (std::abs(oracle.minimizer.mass(n) - mass) > 1e-12) same_law = false;
    }
  }
  // At p = 1 every law with the same P{N = 0} ties, so only values compare.
  if (p < 1.0) agree = agree && same_law;
  if (format == "json") {
    out << json{{"schema_version", kOutputSchemaVersion},
                {"command", "lemma"},
                {"c", c},
                {"p", p},
                {"max_support", max_support},
                {"closed_form", pmf_json(closed)},
                {"closed_form_miss", closed_miss},
                {"oracle", pmf_json(oracle.minimizer)},
                {"oracle_miss", oracle.minimum_miss},
                {"candidates_examined", oracle.candidates_examined},
                {"agree", agree}}
               .dump(2)
        << '\n';
  } else {
    out << "closed_form = " << display(closed) << '\n'
        << "closed_form_miss = " << display(closed_miss) << '\n'
        << "oracle = " << display(oracle.minimizer) << '\n'
        << "oracle_miss = " << display(oracle.minimum_miss) << '\n'
        << "candidates_examined = " << oracle.candidates_examined << '\n'
        << (agree ? "AGREE" : "DISAGREE") << '\n';
  }
  return agree ? kExitOk : kExitRuntime;
}

int cmd_simulate(const ExperimentConfig& c, const std::string& dump_path,
                 double dump_horizon, std::ostream& out) {
  check_format(c.format);
  const GameParams params(c.lambda, c.t, c.p);
  const ScheduleGenerator gen = resolve_generator(c.generator, c, params);
  const auto strategies = parse_strategies(c.strategy);
  const EngineOptions options = engine_options(c);
  const auto results =
      estimate_family(gen, strategies, params, c.replications, c.seed, options);

  if (!dump_path.empty()) {
    Rng rng(c.seed, 0, StreamPurpose::kSchedule);
    const double horizon =
        dump_horizon > 0.0 ? dump_horizon : 10.0 * gen.cycle_length();
    std::ofstream file(dump_path);
    if (!file) throw RuntimeError("cannot write " + dump_path);
    write_realization_csv(file, gen.sample(horizon, rng));
  }

  if (c.format == "json") {
    json rows = json::array();
    for (const auto& r : results) rows.push_back(to_json(r));
    json doc = {{"schema_version", kOutputSchemaVersion},
                {"command", "simulate"},
                {"config", to_json(c)},
                {"schedule", to_json(gen)},
                {"game_value", game_value(params)},
                {"results", rows}};
    emit(c, doc.dump(2) + "\n", out);
  } else {
    emit(c, csv_with_config(c, results), out);
  }
  return kExitOk;
}

int cmd_best_response(const ExperimentConfig& c, std::ostream& out) {
  check_format(c.format);
  const GameParams params(c.lambda, c.t, c.p);
  const ScheduleGenerator gen = resolve_generator(c.generator, c, params);
  const auto family = default_family(params);
  const BestResponseResult br = best_response_search(
      gen, params, family, c.replications, c.seed, engine_options(c));
  const SimulationResult& best = br.best_result();
  if (c.format == "json") {
    json rows = json::array();
    for (const auto& r : br.candidates) rows.push_back(to_json(r));
    json doc = {{"schema_version", kOutputSchemaVersion},
                {"command", "best-response"},
                {"config", to_json(c)},
                {"schedule", to_json(gen)},
                {"game_value", game_value(params)},
                {"winner", to_json(best)},
                {"candidates", rows}};
    emit(c, doc.dump(2) + "\n", out);
  } else {
    std::string payload = csv_with_config(c, br.candidates);
    payload += "# winner: " + best.strategy + " estimate " +
               format_double(best.estimate) + " ci " +
               format_double(best.ci_half_width) + " game_value " +
               format_double(game_value(params)) + "\n";
    emit(c, payload, out);
  }
  return kExitOk;
}

int cmd_compare(const ExperimentConfig& c, std::ostream& out) {
  check_format(c.format);
  const GameParams params(c.lambda, c.t, c.p);
  if (c.contenders.size() < 2) {
    throw ValidationError("compare needs at least two --contender entries");
  }
  std::vector<Contender> contenders;
  for (const std::string& entry : c.contenders) {
    const auto comma = entry.find(',');
    if (comma == std::string::npos) {
      throw ParseError("contender '" + entry +
                       "' must look like <generator>,<strategy>");
    }
    contenders.push_back(
        {resolve_generator(entry.substr(0, comma), c, params),
         parse_strategy(entry.substr(comma + 1))});
  }
  const ComparisonTable table = compare_strategies(
      contenders, params, c.replications, c.seed, engine_options(c));
  if (c.format == "json") {
    json ranked = json::array();
    for (std::size_t rank = 0; rank < table.ranking.size(); ++rank) {
      json row = to_json(table.results[table.ranking[rank]]);
      row["rank"] = rank + 1;
      row["index"] = table.ranking[rank];
      ranked.push_back(row);
    }
    json diffs = json::array();
    for (const auto& d : table.differences) {
      diffs.push_back({{"first", d.first},
                       {"second", d.second},
                       {"difference", d.difference},
                       {"ci_half_width", d.ci_half_width}});
    }
    json doc = {{"schema_version", kOutputSchemaVersion},
                {"command", "compare"},
                {"config", to_json(c)},
                {"game_value", game_value(params)},
                {"ranking", ranked},
                {"differences", diffs}};
    emit(c, doc.dump(2) + "\n", out);
  } else {
    std::vector<SimulationResult> ranked;
    for (std::size_t i : table.ranking) ranked.push_back(table.results[i]);
    std::string payload = csv_with_config(c, ranked);
    payload += "# differences\nfirst,second,difference,ci\n";
    for (const auto& d : table.differences) {
      payload += std::to_string(d.first) + "," + std::to_string(d.second) +
                 "," + format_double(d.difference) + "," +
                 format_double(d.ci_half_width) + "\n";
    }
    emit(c, payload, out);
  }
  return kExitOk;
}

int cmd_validate(const std::string& path, double horizon, double point,
                 double tolerance, std::uint64_t seed, std::ostream& out) {
  json report = {{"schema_version", kOutputSchemaVersion},
                 {"command", "validate"},
                 {"schedule", path}};
  ScheduleGenerator gen = ScheduleGenerator::poisson(1.0);
  try {
    gen = load_schedule_spec_file(path);
  } catch (const RateCapViolation& e) {
    report["valid"] = false;
    report["violation"] = "rate-cap";
    report["message"] = e.what();
    out << report.dump(2) << '\n';
    return kExitValidation;
  }
  const double lambda = gen.lambda();
  const double h = horizon > 0.0 ? horizon : 1e4 / lambda;
  Rng rng(seed, 0, StreamPurpose::kSchedule);
  // Validate over exactly [0, h): the generator's own margin is not wanted.
  const ScheduleRealization full = gen.sample(h, rng);
  std::vector<DispatchEvent> events;
  for (const auto& e : full.events()) {
    if (e.dispatch_time < h) events.push_back(e);
  }
  const ScheduleRealization realization(h, std::move(events),
                                        full.max_lap_time());
  const RateCapReport r =
      validate_rate_cap(realization, lambda, PerimeterPoint(point), tolerance);
  report["valid"] = !r.violation;
  report["seed"] = seed;
  report["lambda"] = r.lambda;
  report["horizon"] = r.horizon;
  report["point"] = point;
  report["tolerance"] = r.tolerance;
  report["dispatches"] = r.dispatches;
  report["passes"] = r.passes;
  report["dispatch_rate"] = r.dispatch_rate;
  report["pass_rate"] = r.pass_rate;
  report["pass_dispatch_ratio"] = r.pass_dispatch_ratio;
  if (r.violation) report["violation"] = "rate-cap";
  out << report.dump(2) << '\n';
  return r.violation ? kExitValidation : kExitOk;
}

void report_error(std::ostream& out, std::ostream& err, bool as_json,
                  const char* kind, const char* message) {
  if (as_json) {
    out << json{{"error", {{"kind", kind}, {"message", message}}}}.dump()
        << '\n';
  }
  err << "error: " << message << '\n';
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Perimeter patrol game: values, strategies and simulation",
               "patrol"};
  app.require_subcommand(1);
  bool error_json = false;
  app.add_flag("--error-json", error_json,
               "Also print errors as JSON on stdout");

  ExperimentConfig value_cfg;
  std::string value_format = "text";
  auto* value = app.add_subcommand("value", "Game value V(lambda, t, p)");
  add_game_options(value, value_cfg);
  value->add_option("--format", value_format, "text or json");

  double lemma_c = 0.0;
  double lemma_p = 0.5;
  int lemma_max = 10;
  std::string lemma_format = "text";
  auto* lemma = app.add_subcommand(
      "lemma", "Two-point minimizer of E[(1-p)^N] against the exhaustive oracle");
  lemma->add_option("--c", lemma_c, "Mean of N")->required();
  lemma->add_option("--p", lemma_p, "Per-pass detection probability");
  lemma->add_option("--max-support", lemma_max, "Largest N the oracle considers");
  lemma->add_option("--format", lemma_format, "text or json");

  ExperimentConfig sim_cfg;
  sim_cfg.command = "simulate";
  std::string sim_config;
  std::string dump_path;
  double dump_horizon = 0.0;
  auto* simulate =
      app.add_subcommand("simulate", "Monte Carlo detection estimate");
  add_experiment_options(simulate, sim_cfg, sim_config);
  simulate->add_option("--strategy", sim_cfg.strategy,
                       "fixed:<s>, stationary, after-pass:<k>:<delay>, sweep");
  simulate->add_option("--dump-schedule", dump_path,
                       "Write one sampled realization as CSV");
  simulate->add_option("--horizon", dump_horizon,
                       "Horizon of the dumped realization");

  ExperimentConfig br_cfg;
  br_cfg.command = "best-response";
  br_cfg.replications = 20000;
  std::string br_config;
  auto* best = app.add_subcommand(
      "best-response", "Search the attacker family for the lowest detection");
  add_experiment_options(best, br_cfg, br_config);

  ExperimentConfig cmp_cfg;
  cmp_cfg.command = "compare";
  std::string cmp_config;
  auto* compare = app.add_subcommand(
      "compare", "Shared-seed comparison of generator/strategy pairs");
  add_experiment_options(compare, cmp_cfg, cmp_config);
  compare->add_option("--contender", cmp_cfg.contenders,
                      "<generator>,<strategy>; repeat for each pair");

  std::string val_schedule;
  double val_horizon = 0.0;
  double val_point = 0.37;
  double val_tolerance = 0.02;
  std::uint64_t val_seed = 42;
  auto* validate = app.add_subcommand(
      "validate", "Check a schedule spec against its rate cap");
  validate->add_option("--schedule", val_schedule, "Schedule spec (JSON)")
      ->required();
  validate->add_option("--horizon", val_horizon,
                       "Validation horizon (default 1e4 / lambda)");
  validate->add_option("--point", val_point, "Perimeter point to observe");
  validate->add_option("--tolerance", val_tolerance, "Relative rate tolerance");
  validate->add_option("--seed", val_seed, "Random seed");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    report_error(out, err, error_json, "usage", e.what());
    return kExitValidation;
  }

  try {
    if (*value) return cmd_value(value_cfg, value_format, out);
    if (*lemma) return cmd_lemma(lemma_c, lemma_p, lemma_max, lemma_format, out);
    if (*simulate) {
      if (!sim_config.empty()) {
        load_config_file(sim_config, sim_cfg, given_options(simulate));
      }
      return cmd_simulate(sim_cfg, dump_path, dump_horizon, out);
    }
    if (*best) {
      if (!br_config.empty()) {
        load_config_file(br_config, br_cfg, given_options(best));
      }
      return cmd_best_response(br_cfg, out);
    }
    if (*compare) {
      if (!cmp_config.empty()) {
        load_config_file(cmp_config, cmp_cfg, given_options(compare));
      }
      return cmd_compare(cmp_cfg, out);
    }
    if (*validate) {
      return cmd_validate(val_schedule, val_horizon, val_point, val_tolerance,
                          val_seed, out);
    }
  } catch (const ValidationError& e) {
    report_error(out, err, error_json, e.kind(), e.what());
    return kExitValidation;
  } catch (const RuntimeError& e) {
    report_error(out, err, error_json, e.kind(), e.what());
    return kExitRuntime;
  } catch (const std::exception& e) {
    report_error(out, err, error_json, "internal", e.what());
    return kExitRuntime;
  }
  return kExitValidation;
}

}  // namespace patrol
