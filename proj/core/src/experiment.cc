// Copyright 2026 The recfr Authors.
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

#include "recfr/experiment.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace recfr {
namespace {

const char* const kGameParamKeys[] = {"rows", "cols", "outcomes", "payoff-seed", "payoffs",
                                      "cards", "ranks"};

bool is_game_param(const std::string& key) {
  return std::find(std::begin(kGameParamKeys), std::end(kGameParamKeys), key) !=
         std::end(kGameParamKeys);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  char* end = nullptr;
  errno = 0;
  const double x = std::strtod(v.c_str(), &end);
  if (v.empty() || *end != '\0' || errno == ERANGE || !std::isfinite(x)) {
    throw ConfigError(key, "expected a number, got '" + value + "'");
  }
  return x;
}

long long parse_integer(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  char* end = nullptr;
  errno = 0;
  const long long x = std::strtoll(v.c_str(), &end, 10);
  if (v.empty() || *end != '\0' || errno == ERANGE) {
    throw ConfigError(key, "expected an integer, got '" + value + "'");
  }
  return x;
}

int parse_int(const std::string& key, const std::string& value) {
  const long long x = parse_integer(key, value);
  if (x < -2147483647LL || x > 2147483647LL) throw ConfigError(key, "integer out of range");
  return static_cast<int>(x);
}

std::uint64_t parse_seed(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  if (v.empty() || v[0] == '-') throw ConfigError(key, "expected a nonnegative integer");
  char* end = nullptr;
  errno = 0;
  const unsigned long long x = std::strtoull(v.c_str(), &end, 10);
  if (*end != '\0' || errno == ERANGE) {
    throw ConfigError(key, "expected a nonnegative integer, got '" + value + "'");
  }
  return x;
}

bool parse_bool(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError(key, "expected true or false, got '" + value + "'");
}

template <typename Parse>
auto wrap(const std::string& key, Parse parse) {
  try {
    return parse();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(key, e.what());
  }
}

void apply(ExperimentConfig& config, const std::string& key, const std::string& value) {
  RunConfig& run = config.run;
  if (key == "game") {
    run.game = trim(value);
  } else if (key == "algo") {
    run.algorithm = parse_algorithm(trim(value));
  } else if (key == "iters") {
    run.iterations = parse_int(key, value);
  } else if (key == "eval-every") {
    run.eval_every = parse_int(key, value);
  } else if (key == "lambda-mode") {
    run.lambda.mode = wrap(key, [&] { return parse_lambda_mode(trim(value)); });
  } else if (key == "lambda-init") {
    run.lambda.coefficient = parse_double(key, value);
  } else if (key == "adaptive") {
    run.lambda.adaptive = parse_bool(key, value);
  } else if (key == "beta-amp") {
    run.lambda.beta_amp = parse_double(key, value);
  } else if (key == "beta-damp") {
    run.lambda.beta_damp = parse_double(key, value);
  } else if (key == "lambda-floor") {
    run.lambda.adaptive_floor = parse_double(key, value);
  } else if (key == "games-per-iter") {
    run.bootstrap.games_per_iteration = parse_int(key, value);
  } else if (key == "alpha") {
    run.bootstrap.alpha = parse_double(key, value);
  } else if (key == "alpha-schedule") {
    run.bootstrap.alpha_schedule = wrap(key, [&] { return parse_alpha_schedule(trim(value)); });
  } else if (key == "gamma") {
    run.bootstrap.gamma = parse_double(key, value);
  } else if (key == "eta") {
    run.bootstrap.eta = parse_double(key, value);
  } else if (key == "learning-mode") {
    run.bootstrap.mode = wrap(key, [&] { return parse_learning_mode(trim(value)); });
  } else if (key == "reach-rate") {
    run.bootstrap.reach_rate = parse_double(key, value);
  } else if (key == "seed") {
    run.seed = parse_seed(key, value);
  } else if (key == "output") {
    config.output = trim(value);
  } else if (key == "warm-iters") {
    run.warm_iterations = parse_int(key, value);
  } else if (key == "warm-source") {
    run.warm_source = trim(value);
  } else if (is_game_param(key)) {
    run.game_params[key] = trim(value);
  } else {
    throw ConfigError(key, "unknown configuration key");
  }
}

void validate(const ExperimentConfig& config) {
  const RunConfig& run = config.run;
  run.validate();
  if (!(run.lambda.adaptive_floor > 0.0)) throw ConfigError("lambda-floor", "must be positive");
  if (!(run.bootstrap.reach_rate > 0.0 && run.bootstrap.reach_rate <= 1.0)) {
    throw ConfigError("reach-rate", "must lie in (0,1]");
  }
  try {
    build_game(run.game, run.game_params);
  } catch (const Error& e) {
    throw ConfigError("game", e.what());
  }
}

// Shortest representation that round-trips.
std::string format_double(double x) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, result.ptr);
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "game", "algo", "iters", "eval-every", "seed", "output",
      "lambda-mode", "lambda-init", "adaptive", "beta-amp", "beta-damp", "lambda-floor",
      "games-per-iter", "alpha", "alpha-schedule", "gamma", "eta", "learning-mode",
      "reach-rate", "warm-iters", "warm-source",
      "rows", "cols", "outcomes", "payoff-seed", "payoffs", "cards", "ranks"};
  return keys;
}

ExperimentConfig config_from_settings(const std::map<std::string, std::string>& settings) {
  ExperimentConfig config;
  for (const auto& [key, value] : settings) apply(config, key, value);
  validate(config);
  return config;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot read '" + path + "'");
  std::map<std::string, std::string> settings;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config", path + ":" + std::to_string(number) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    if (std::find(config_keys().begin(), config_keys().end(), key) == config_keys().end()) {
      throw ConfigError(key, "unknown configuration key in " + path);
    }
    settings[key] = trim(line.substr(eq + 1));
  }
  return settings;
}

ExperimentConfig parse_config(const std::vector<std::string>& args) {
  CLI::App app{"Run one solver and log exploitability as CSV", "recfr run"};
  std::string config_file;
  app.add_option("--config", config_file, "key = value file; flags override it");
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
  for (const std::string& key : config_keys()) {
    if (key == "adaptive") {
      options[key] = app.add_flag("--adaptive", "Adapt the lambda coefficient each iteration");
    } else {
      options[key] = app.add_option("--" + key, values[key]);
    }
  }
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::ParseError& e) {
    std::string key = e.get_name();
    if (!reversed.empty() && key == "ExtrasError") key = reversed.back();
    throw ConfigError(key, e.what());
  }

  std::map<std::string, std::string> settings;
  if (!config_file.empty()) settings = read_config_file(config_file);
  for (const auto& [key, option] : options) {
    if (option->count() == 0) continue;
    settings[key] = key == "adaptive" ? "true" : values[key];
  }
  if (!settings.count("seed")) {
    if (const char* env = std::getenv("RECFR_SEED"); env != nullptr && *env != '\0') {
      settings["seed"] = env;
    }
  }
  return config_from_settings(settings);
}

std::string describe(const ExperimentConfig& config) {
  const RunConfig& run = config.run;
  std::ostringstream out;
  auto line = [&](const std::string& key, const std::string& value) {
    out << "# " << key << " = " << value << "\n";
  };
  line("game", run.game);
  for (const auto& [key, value] : run.game_params) line(key, value);
  line("algo", to_string(run.algorithm));
  line("iters", std::to_string(run.iterations));
  line("eval-every", std::to_string(run.eval_every));
  line("lambda-mode", to_string(run.lambda.mode));
  line("lambda-init", format_double(run.lambda.coefficient));
  line("adaptive", run.lambda.adaptive ? "true" : "false");
  line("beta-amp", format_double(run.lambda.beta_amp));
  line("beta-damp", format_double(run.lambda.beta_damp));
  line("lambda-floor", format_double(run.lambda.adaptive_floor));
  line("games-per-iter", std::to_string(run.bootstrap.games_per_iteration));
  line("alpha", format_double(run.bootstrap.alpha));
  line("alpha-schedule", to_string(run.bootstrap.alpha_schedule));
  line("gamma", format_double(run.bootstrap.gamma));
  line("eta", format_double(run.bootstrap.eta));
  line("learning-mode", to_string(run.bootstrap.mode));
  line("reach-rate", format_double(run.bootstrap.reach_rate));
  line("warm-iters", std::to_string(run.warm_iterations));
  line("warm-source", run.warm_source);
  line("seed", std::to_string(run.seed));
  line("output", config.output.empty() ? "-" : config.output);
  return out.str();
}

std::string format_csv_row(const RunRecord& r) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "%d,%lld,%lld,%.17g,%.17g,%.17g,%.17g,%.6f\n", r.iteration,
                static_cast<long long>(r.nodes_touched), static_cast<long long>(r.samples),
                r.exploit_chips, r.exploit_mbbg, r.lambda, r.vsum, r.seconds);
  return buf;
}

std::string format_csv(const RunLog& log) {
  std::string out = std::string(kCsvHeader) + "\n";
  for (const RunRecord& r : log.records) out += format_csv_row(r);
  return out;
}

void write_csv(const RunLog& log, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << format_csv(log);
  if (!out) throw Error("write to '" + path + "' failed");
}

RunLog parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || trim(line) != kCsvHeader) {
    throw Error("unexpected CSV header (expected '" + std::string(kCsvHeader) + "')");
  }
  RunLog log;
  int number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (trim(line).empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 8) {
      throw Error("CSV line " + std::to_string(number) + ": expected 8 fields");
    }
    try {
      RunRecord r;
      r.iteration = parse_int("iteration", fields[0]);
      r.nodes_touched = parse_integer("nodes_touched", fields[1]);
      r.samples = parse_integer("samples", fields[2]);
      r.exploit_chips = parse_double("exploit_chips", fields[3]);
      r.exploit_mbbg = parse_double("exploit_mbbg", fields[4]);
      r.lambda = parse_double("lambda", fields[5]);
      r.vsum = parse_double("vsum", fields[6]);
      r.seconds = parse_double("seconds", fields[7]);
      log.records.push_back(r);
    } catch (const ConfigError& e) {
      throw Error("CSV line " + std::to_string(number) + ": " + e.what());
    }
  }
  return log;
}

RunLog read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_csv(ss.str());
  } catch (const Error& e) {
    throw Error(path + ": " + e.what());
  }
}

RunLog run_experiment(const ExperimentConfig& config) {
  const bool to_stdout = config.output.empty() || config.output == "-";
  std::ofstream file;
  if (!to_stdout) {
    file.open(config.output, std::ios::binary);
    if (!file) throw Error("cannot write '" + config.output + "'");
  }
  std::ostream& out = to_stdout ? std::cout : file;
  out << kCsvHeader << "\n";
  RunLog log = run_solver(config.run, [&](const RunRecord& r) {
    out << format_csv_row(r);
    out.flush();
  });
  if (!out) throw Error("write to '" + (to_stdout ? std::string("stdout") : config.output) +
                        "' failed");
  return log;
}

RunSummary summarize(const std::string& path, const RunLog& log) {
  RunSummary s;
  s.path = path;
  if (!log.records.empty()) s.final_record = log.records.back();
  for (double threshold : comparison_thresholds()) {
    ThresholdCrossing c;
    c.threshold_mbbg = threshold;
    for (const RunRecord& r : log.records) {
      if (r.exploit_mbbg <= threshold) {
        c.reached = true;
        c.iteration = r.iteration;
        c.nodes_touched = r.nodes_touched;
        break;
      }
    }
    s.crossings.push_back(c);
  }
  return s;
}

std::vector<RunSummary> compare_runs(const std::vector<std::string>& paths, std::ostream& out) {
  if (paths.size() < 2) throw ConfigError("compare", "needs at least two CSV files");
  std::vector<RunSummary> summaries;
  for (const std::string& path : paths) summaries.push_back(summarize(path, read_csv(path)));

  out << "run\tfinal_iteration\tfinal_exploit_mbbg";
  for (double threshold : comparison_thresholds()) {
    const std::string t = format_double(threshold);
    out << "\titers_to_" << t << "\tnodes_to_" << t;
  }
  out << "\n";
  for (const RunSummary& s : summaries) {
    out << s.path << "\t" << s.final_record.iteration << "\t"
        << format_double(s.final_record.exploit_mbbg);
    for (const ThresholdCrossing& c : s.crossings) {
      if (c.reached) {
        out << "\t" << c.iteration << "\t" << c.nodes_touched;
      } else {
        out << "\t-\t-";
      }
    }
    out << "\n";
  }
  return summaries;
}

}  // namespace recfr
