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

// Full-width solvers: vanilla CFR, ReCFR with lambda schedules (XFP and CFR
// as special cases) and CFR warm-started from an arbitrary profile.

#ifndef RECFR_SOLVER_HPP_
#define RECFR_SOLVER_HPP_

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "recfr/game.hpp"
#include "recfr/rsv.hpp"
#include "recfr/tree_values.hpp"

namespace recfr {

enum class LambdaMode {
  kZero,           // lambda = 0 everywhere (XFP)
  kConstant,       // lambda(I) = coefficient
  kCorollary,      // lambda(I) = coefficient * pi_{-p}(I) * delta(I)^2 * |A(I)| * t
  kCfrEquivalent,  // lambda(I) = sum_a (R^t(I, a))_+^2 of vanilla CFR regrets
};

const char* to_string(LambdaMode mode);
// Accepts "zero", "constant", "corollary1" and "cfr-equivalent".
LambdaMode parse_lambda_mode(const std::string& name);

struct LambdaSchedule {
  LambdaMode mode = LambdaMode::kCorollary;
  double coefficient = 1e-5;
  bool adaptive = false;
  double beta_amp = 1.01;
  double beta_damp = 0.99;
  // Adaptive runs started at coefficient 0 begin from this value instead,
  // since multiplicative updates would otherwise keep it at 0.
  double adaptive_floor = 1e-12;

  void validate() const;
};

// Multiplies a global coefficient by beta_amp when v'_1 + v'_2 > 0 and by
// beta_damp otherwise.
class AdaptiveLambdaController {
 public:
  AdaptiveLambdaController(double initial, double beta_amp, double beta_damp);

  double value() const { return value_; }
  double update(double value_sum);

 private:
  double value_;
  double beta_amp_;
  double beta_damp_;
};

struct IterationMetrics {
  int iteration = 0;
  std::int64_t nodes_touched = 0;  // history visits in this iteration
  double lambda = 0.0;             // coefficient used in this iteration
  double value_sum = 0.0;          // v'_1 + v'_2 (ReCFR only)
};

// Reach-weighted average strategy accumulators.
class AverageStrategy {
 public:
  AverageStrategy() = default;
  explicit AverageStrategy(const Game& game);

  // Adds weight * pi_p(I) * sigma(I, .) for every infoset.
  void add(const Game& game, const StrategyProfile& sigma, const ReachTable& reaches,
           double weight = 1.0);
  // Adds sigma(I, .) with unit reach weight at one infoset.
  void add_at(int infoset, std::span<const double> sigma, double weight = 1.0);

  // Numerator / denominator, uniform where the denominator is zero.
  StrategyProfile profile(const Game& game) const;

  const ActionTable& numerators() const { return numerators_; }
  const std::vector<double>& denominators() const { return denominators_; }

 private:
  ActionTable numerators_;
  std::vector<double> denominators_;
};

// Simultaneous-update vanilla CFR.
class CfrSolver {
 public:
  explicit CfrSolver(std::shared_ptr<const Game> game,
                     std::shared_ptr<const SuccessorIndex> successors = nullptr);

  IterationMetrics iterate();

  int iteration() const { return iteration_; }
  const Game& game() const { return *game_; }
  // sigma^t of the last iteration (uniform before the first).
  const StrategyProfile& current() const { return current_; }
  StrategyProfile average() const { return average_.profile(*game_); }
  const AverageStrategy& average_accumulator() const { return average_; }
  const ActionTable& cumulative_regrets() const { return regrets_; }

  // Replaces the cumulative regrets, e.g. with substitute regrets.
  void set_cumulative_regrets(ActionTable regrets);

 private:
  std::shared_ptr<const Game> game_;
  std::shared_ptr<const SuccessorIndex> successors_;
  int iteration_ = 0;
  bool warm_ = false;  // regrets were set externally; regret-match from the start
  StrategyProfile current_;
  ActionTable regrets_;
  AverageStrategy average_;
};

// Algorithm 1. Each iteration computes sigma^t for both players by regret
// matching on the substitute regrets, folds it into the averages, and then
// recomputes both players' RSVs under the updated average sigma-bar^t.
class RecfrSolver {
 public:
  RecfrSolver(std::shared_ptr<const Game> game, LambdaSchedule schedule,
              std::shared_ptr<const SuccessorIndex> successors = nullptr);

  IterationMetrics iterate();

  int iteration() const { return iteration_; }
  const Game& game() const { return *game_; }
  const LambdaSchedule& schedule() const { return schedule_; }
  const StrategyProfile& current() const { return current_; }
  StrategyProfile average() const { return average_.profile(*game_); }
  const AverageStrategy& average_accumulator() const { return average_; }
  // R'^t for both players.
  const ActionTable& substitute_regrets() const { return substitute_; }
  const RsvTable& rsv(Player p) const { return rsv_[p]; }
  // Per-infoset budgets used in the last iteration.
  const std::vector<double>& lambda_table() const { return lambda_; }
  // Coefficient the next iteration will use.
  double lambda_coefficient() const;

 private:
  void fill_lambda(const ReachTable& average_reaches, double coefficient);

  std::shared_ptr<const Game> game_;
  std::shared_ptr<const SuccessorIndex> successors_;
  LambdaSchedule schedule_;
  std::unique_ptr<AdaptiveLambdaController> controller_;
  int iteration_ = 0;
  StrategyProfile current_;
  ActionTable substitute_;
  ActionTable cfr_regrets_;  // kCfrEquivalent only
  AverageStrategy average_;
  std::vector<double> lambda_;
  std::array<RsvTable, kNumPlayers> rsv_;
};

// CFR started from substitute regrets of `initial`, treated as the average of
// `virtual_iterations` earlier iterations. The reported average weights the
// initial profile as that many iterations played with it.
class WarmCfrSolver {
 public:
  WarmCfrSolver(std::shared_ptr<const Game> game, const StrategyProfile& initial,
                int virtual_iterations, LambdaSchedule schedule,
                std::shared_ptr<const SuccessorIndex> successors = nullptr);

  IterationMetrics iterate();

  int iteration() const { return cfr_.iteration(); }
  const StrategyProfile& current() const { return cfr_.current(); }
  StrategyProfile average() const;
  const ActionTable& initial_regrets() const { return initial_regrets_; }

 private:
  std::shared_ptr<const Game> game_;
  StrategyProfile initial_;
  int virtual_iterations_;
  AverageStrategy initial_average_;
  ActionTable initial_regrets_;
  CfrSolver cfr_;
};

struct WarmStartResult {
  StrategyProfile average;
  std::vector<IterationMetrics> log;
};

WarmStartResult warm_start_cfr(std::shared_ptr<const Game> game, const StrategyProfile& initial,
                               int virtual_iterations, const LambdaSchedule& schedule,
                               int extra_iterations);

}  // namespace recfr

#endif  // RECFR_SOLVER_HPP_
