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

// recfr run | compare | dump-game
//
// Exit codes: 0 success, 2 configuration error, 3 runtime error.

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "recfr/experiment.hpp"
#include "recfr/game.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

constexpr char kUsage[] =
    "usage: recfr <command> [options]\n"
    "\n"
    "commands:\n"
    "  run        run a solver and write a CSV convergence log\n"
    "  compare    summarize two or more CSV logs\n"
    "  dump-game  print the enumerated game tree\n"
    "\n"
    "Run `recfr <command> --help` for the options of a command.\n";

int run_command(const std::vector<std::string>& args) {
  recfr::ExperimentConfig config;
  try {
    config = recfr::parse_config(args);
  } catch (const recfr::HelpRequested& help) {
    std::cout << help.what();
    return kExitOk;
  }
  std::cerr << recfr::describe(config);
  recfr::run_experiment(config);
  return kExitOk;
}

int compare_command(const std::vector<std::string>& args) {
  CLI::App app{"Summarize CSV logs: final exploitability and threshold crossings",
               "recfr compare"};
  std::vector<std::string> paths;
  app.add_option("csv", paths, "CSV logs written by `recfr run`");
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    throw recfr::ConfigError("compare", e.what());
  }
  recfr::compare_runs(paths, std::cout);
  return kExitOk;
}

int dump_game_command(const std::vector<std::string>& args) {
  CLI::App app{"Print one line per history of an enumerated game", "recfr dump-game"};
  std::string game = "kuhn";
  app.add_option("--game", game, "kuhn, leduc or matrix-test");
  std::map<std::string, std::string> values;
  std::vector<std::pair<std::string, CLI::Option*>> options;
  for (const char* key : {"rows", "cols", "outcomes", "payoff-seed", "payoffs", "cards", "ranks"}) {
    options.emplace_back(key, app.add_option(std::string("--") + key, values[key]));
  }
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    throw recfr::ConfigError(e.get_name(), e.what());
  }
  recfr::GameParams params;
  for (const auto& [key, option] : options) {
    if (option->count() > 0) params[key] = values[key];
  }
  std::shared_ptr<const recfr::Game> g;
  try {
    g = recfr::build_game(game, params);
  } catch (const recfr::Error& e) {
    throw recfr::ConfigError("game", e.what());
  }
  std::cout << recfr::dump_game(*g);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << kUsage;
    return kExitConfig;
  }
  const std::string command = argv[1];
  const std::vector<std::string> args(argv + 2, argv + argc);
  try {
    if (command == "run") return run_command(args);
    if (command == "compare") return compare_command(args);
    if (command == "dump-game") return dump_game_command(args);
    if (command == "-h" || command == "--help" || command == "help") {
      std::cout << kUsage;
      return kExitOk;
    }
    std::cerr << "recfr: unknown command '" << command << "'\n\n" << kUsage;
    return kExitConfig;
  } catch (const recfr::ConfigError& e) {
    std::cerr << "recfr: configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "recfr: error: " << e.what() << "\n";
    return kExitRuntime;
  }
}
