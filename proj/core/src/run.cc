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

#include "recfr/run.hpp"

#include <chrono>
#include <cmath>

#include "recfr/tree_values.hpp"

namespace recfr {

const char* to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kCfr:
      return "cfr";
    case Algorithm::kRecfr:
      return "recfr";
    case Algorithm::kXfp:
      return "xfp";
    case Algorithm::kWarm:
      return "warm";
    case Algorithm::kRecfrB:
      return "recfr-b";
  }
  return "?";
}

Algorithm parse_algorithm(const std::string& name) {
  for (Algorithm a : {Algorithm::kCfr, Algorithm::kRecfr, Algorithm::kXfp, Algorithm::kWarm,
                      Algorithm::kRecfrB}) {
    if (name == to_string(a)) return a;
  }
  throw ConfigError("algo", "unknown algorithm '" + name +
                                "' (expected cfr, recfr, xfp, warm or recfr-b)");
}

void RunConfig::validate() const {
  if (iterations < 1) throw ConfigError("iters", "must be at least 1");
  if (eval_every < 1) throw ConfigError("eval-every", "must be at least 1");
  if (!std::isfinite(lambda.coefficient) || lambda.coefficient < 0.0) {
    throw ConfigError("lambda-init", "must be a finite nonnegative number");
  }
  if (!(lambda.beta_amp > 1.0) || !std::isfinite(lambda.beta_amp)) {
    throw ConfigError("beta-amp", "must be greater than 1");
  }
  if (!(lambda.beta_damp > 0.0 && lambda.beta_damp < 1.0)) {
    throw ConfigError("beta-damp", "must lie in the open range (0,1)");
  }
  if (lambda.adaptive && lambda.mode != LambdaMode::kConstant &&
      lambda.mode != LambdaMode::kCorollary) {
    throw ConfigError("adaptive", "needs lambda-mode constant or corollary1");
  }
  if (bootstrap.games_per_iteration < 1) {
    throw ConfigError("games-per-iter", "must be at least 1");
  }
  if (!(bootstrap.alpha >= 0.0 && bootstrap.alpha <= 1.0)) {
    throw ConfigError("alpha", "must lie in [0,1]");
  }
  if (!(bootstrap.gamma > 0.0 && bootstrap.gamma <= 1.0)) {
    throw ConfigError("gamma", "must lie in (0,1]");
  }
  if (!(bootstrap.eta > 0.0 && bootstrap.eta < 1.0)) {
    throw ConfigError("eta", "must lie in the open range (0,1)");
  }
  if (algorithm == Algorithm::kRecfrB) {
    if (lambda.mode == LambdaMode::kCfrEquivalent) {
      throw ConfigError("lambda-mode", "cfr-equivalent needs the full-width solver");
    }
  }
  if (algorithm == Algorithm::kWarm) {
    if (warm_iterations < 1) throw ConfigError("warm-iters", "must be at least 1");
    if (warm_source != "cfr" && warm_source != "uniform") {
      throw ConfigError("warm-source", "must be cfr or uniform");
    }
    if (lambda.mode == LambdaMode::kCfrEquivalent) {
      throw ConfigError("lambda-mode", "cfr-equivalent has no meaning for a warm start");
    }
  }
}

namespace {

struct StepResult {
  std::int64_t nodes = 0;
  std::int64_t samples = 0;
  double lambda = 0.0;
  double vsum = 0.0;
};

StepResult from(const IterationMetrics& m) { return {m.nodes_touched, 0, m.lambda, m.value_sum}; }
StepResult from(const BootstrapMetrics& m) {
  return {m.nodes_touched, m.samples, m.lambda, m.value_sum};
}

template <typename Solver>
RunLog drive(const RunConfig& config, const Game& game, const SuccessorIndex& successors,
             Solver& solver, const std::function<void(const RunRecord&)>& on_record) {
  using Clock = std::chrono::steady_clock;
  RunLog log;
  std::int64_t nodes = 0;
  std::int64_t samples = 0;
  double seconds = 0.0;
  for (int t = 1; t <= config.iterations; ++t) {
    const auto start = Clock::now();
    const StepResult step = from(solver.iterate());
    seconds += std::chrono::duration<double>(Clock::now() - start).count();
    nodes += step.nodes;
    samples += step.samples;
    if (t % config.eval_every != 0 && t != config.iterations) continue;
    const Exploitability e = exploitability(game, successors, solver.average());
    RunRecord r;
    r.iteration = t;
    r.nodes_touched = nodes;
    r.samples = samples;
    r.exploit_chips = e.total;
    r.exploit_mbbg = e.mbbg;
    r.lambda = step.lambda;
    r.vsum = step.vsum;
    r.seconds = seconds;
    log.records.push_back(r);
    if (on_record) on_record(r);
  }
  return log;
}

}  // namespace

RunLog run_solver(const RunConfig& config,
                  const std::function<void(const RunRecord&)>& on_record) {
  config.validate();
  std::shared_ptr<const Game> game;
  try {
    game = build_game(config.game, config.game_params);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError("game", e.what());
  }
  const auto successors = build_successors(*game);

  switch (config.algorithm) {
    case Algorithm::kCfr: {
      CfrSolver solver(game, successors);
      return drive(config, *game, *successors, solver, on_record);
    }
    case Algorithm::kRecfr:
    case Algorithm::kXfp: {
      LambdaSchedule schedule = config.lambda;
      if (config.algorithm == Algorithm::kXfp) {
        schedule = LambdaSchedule{};
        schedule.mode = LambdaMode::kZero;
      }
      RecfrSolver solver(game, schedule, successors);
      return drive(config, *game, *successors, solver, on_record);
    }
    case Algorithm::kWarm: {
      StrategyProfile initial = StrategyProfile::uniform(*game);
      if (config.warm_source == "cfr") {
        CfrSolver pre(game, successors);
        for (int t = 0; t < config.warm_iterations; ++t) pre.iterate();
        initial = pre.average();
      }
      WarmCfrSolver solver(game, initial, config.warm_iterations, config.lambda, successors);
      return drive(config, *game, *successors, solver, on_record);
    }
    case Algorithm::kRecfrB: {
      BootstrapConfig bc = config.bootstrap;
      bc.lambda = config.lambda;
      bc.seed = config.seed;
      BootstrapSolver solver(game, bc);
      return drive(config, *game, *successors, solver, on_record);
    }
  }
  throw Error("unhandled algorithm");
}

}  // namespace recfr
