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

// Tabular ReCFR-B: normalized RSVs u' = v' / pi_{-p}(I) learned from sampled
// trajectories by off-policy bootstrap updates.

#ifndef RECFR_BOOTSTRAP_HPP_
#define RECFR_BOOTSTRAP_HPP_

#include <array>
#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include "recfr/game.hpp"
#include "recfr/solver.hpp"

namespace recfr {

// mt19937_64 with a fixed integer-to-double mapping, so sampled runs are
// reproducible across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  // Index drawn from a probability vector.
  int sample(std::span<const double> probs);

 private:
  std::mt19937_64 engine_;
};

enum class LearningMode { kAsymmetric, kSymmetric };
// kHarmonic uses alpha / (1 + alpha * n) on the n-th update of an entry.
enum class AlphaSchedule { kConstant, kHarmonic };

const char* to_string(LearningMode mode);
LearningMode parse_learning_mode(const std::string& name);
const char* to_string(AlphaSchedule schedule);
AlphaSchedule parse_alpha_schedule(const std::string& name);

struct BootstrapConfig {
  int games_per_iteration = 1000;  // K, per player
  double alpha = 0.05;
  AlphaSchedule alpha_schedule = AlphaSchedule::kConstant;
  double gamma = 1.0;
  double eta = 0.1;
  LearningMode mode = LearningMode::kAsymmetric;
  LambdaSchedule lambda;      // zero, constant or corollary1, optionally adaptive
  double reach_rate = 0.01;   // EMA rate of the reach estimates
  std::uint64_t seed = 0;

  void validate() const;
};

struct Transition {
  int history = -1;  // -1 for the virtual root decision
  int action = 0;
  int next = -1;            // the player's next decision history, or the terminal
  double others_reach = 1;  // pi_{-p}(history) under the reference profile
};

struct Trajectory {
  Player player = kPlayer1;
  std::vector<Transition> transitions;
  int terminal = -1;
  double payoff = 0.0;  // for `player`
  bool followed_current = false;
  int nodes = 0;  // histories visited, root and terminal included
};

// Plays one game from the root. Chance samples its distribution, `player`
// samples `behavior_player` and the opponent `behavior_opponent`. Reaches are
// products of chance probabilities and `reference`'s opponent probabilities.
Trajectory sample_trajectory(const Game& game, Player player,
                             const StrategyProfile& behavior_player,
                             const StrategyProfile& behavior_opponent,
                             const StrategyProfile& reference, Rng& rng);

class BootstrapTables {
 public:
  explicit BootstrapTables(const Game& game);

  ActionTable values;                     // u'(I, a)
  std::array<double, kNumPlayers> root{};  // u' of each player's virtual root
  std::vector<std::int64_t> visits;        // per (infoset, action) slot
  std::array<std::int64_t, kNumPlayers> root_visits{};
  std::vector<double> reach_estimate;      // running pi_{-p}(I)
  std::vector<char> reach_seen;
  std::array<double, kNumPlayers> lower{};  // clamp range per player
  std::array<double, kNumPlayers> upper{};

  // u'(I) from the current action estimates: the solution of
  // sum_a (u'(I, a) - u'(I))_+^2 = beta, the maximum when beta = 0 or the
  // infoset has one action.
  double infoset_value(const Game& game, int infoset, double beta) const;

  // Slot index of (infoset, action) in `values` and `visits`.
  int slot(const Game& game, int infoset, int action) const {
    return (*game.offsets())[infoset] + action;
  }

  void observe_reach(int infoset, double reach, double rate);
};

// u'(I(h), a) <- u'(I(h), a) + alpha (target - u'(I(h), a)), with target the
// payoff if `transition.next` is terminal and gamma * u'(I(next)) otherwise.
// `next_beta` is the budget of the successor infoset.
void bootstrap_update(const Game& game, BootstrapTables& tables, Player player,
                      const Transition& transition, double payoff_if_terminal, double alpha,
                      double gamma, double next_beta);

// beta(I) = lambda(I) / (pi(I) t)^2 for a schedule whose lambda(I) uses the
// reach pi(I); reduces to coefficient * delta^2 |A| / (pi t) for corollary1.
double bootstrap_beta(const LambdaSchedule& schedule, double coefficient, const Infoset& info,
                      double reach, double t);

struct BootstrapMetrics {
  int iteration = 0;
  std::int64_t nodes_touched = 0;  // this iteration
  std::int64_t samples = 0;        // transitions, this iteration
  double lambda = 0.0;
  double value_sum = 0.0;  // estimated u'_1(root) + u'_2(root)
};

class BootstrapSolver {
 public:
  BootstrapSolver(std::shared_ptr<const Game> game, BootstrapConfig config);

  BootstrapMetrics iterate();

  int iteration() const { return iteration_; }
  const StrategyProfile& current() const { return current_; }
  StrategyProfile average() const { return average_.profile(*game_); }
  const BootstrapTables& tables() const { return tables_; }
  double lambda_coefficient() const;

 private:
  double beta(int infoset, double coefficient, double t) const;
  void update_current(double coefficient);

  std::shared_ptr<const Game> game_;
  BootstrapConfig config_;
  std::unique_ptr<AdaptiveLambdaController> controller_;
  Rng rng_;
  int iteration_ = 0;
  StrategyProfile current_;
  StrategyProfile uniform_;
  AverageStrategy average_;
  BootstrapTables tables_;
};

struct ProbePoint {
  std::int64_t games = 0;  // total, alternating between the players
  double max_error = 0.0;
};

struct ProbeConfig {
  double lambda = 1e-3;  // corollary1 coefficient
  double t = 1.0;
  double alpha = 0.05;
  // Convergence with probability 1 needs a decaying step size; a constant
  // alpha leaves a noise floor proportional to sqrt(alpha).
  AlphaSchedule alpha_schedule = AlphaSchedule::kConstant;
  double gamma = 1.0;
  double eta = 0.1;
  std::uint64_t seed = 0;
};

// Freezes the average profile and plays `max_games` games that alternate the
// learning player. The opponent plays `average`, the learner (1 - eta)
// uniform + eta `learner_current`. Reports the largest |u' - u'_exact| over entries with
// positive opponent-and-chance reach at each checkpoint. The exact values are
// the normalized RSVs of the same budgets.
std::vector<ProbePoint> rsv_convergence_probe(const Game& game,
                                                   const StrategyProfile& average,
                                                   const StrategyProfile& learner_current,
                                                   const ProbeConfig& config,
                                                   std::int64_t max_games,
                                                   const std::vector<std::int64_t>& checkpoints);

// Exact normalized RSVs for the probe's budgets, both players in one table.
BootstrapTables exact_normalized_rsv(const Game& game, const StrategyProfile& average,
                                     double lambda, double t);

}  // namespace recfr

#endif  // RECFR_BOOTSTRAP_HPP_
