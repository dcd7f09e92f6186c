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

#include "recfr/bootstrap.hpp"

#include <algorithm>
#include <cmath>

#include "recfr/rsv.hpp"
#include "recfr/tree_values.hpp"

namespace recfr {

int Rng::sample(std::span<const double> probs) {
  const double u = uniform();
  double cumulative = 0.0;
  int last = -1;
  for (std::size_t a = 0; a < probs.size(); ++a) {
    if (probs[a] <= 0.0) continue;
    cumulative += probs[a];
    last = static_cast<int>(a);
    if (u < cumulative) return last;
  }
  if (last < 0) throw Error("cannot sample from a distribution without positive mass");
  return last;
}

const char* to_string(LearningMode mode) {
  return mode == LearningMode::kAsymmetric ? "asymmetric" : "symmetric";
}

LearningMode parse_learning_mode(const std::string& name) {
  if (name == "asymmetric") return LearningMode::kAsymmetric;
  if (name == "symmetric") return LearningMode::kSymmetric;
  throw Error("unknown learning mode '" + name + "' (expected asymmetric or symmetric)");
}

const char* to_string(AlphaSchedule schedule) {
  return schedule == AlphaSchedule::kConstant ? "constant" : "harmonic";
}

AlphaSchedule parse_alpha_schedule(const std::string& name) {
  if (name == "constant") return AlphaSchedule::kConstant;
  if (name == "harmonic") return AlphaSchedule::kHarmonic;
  throw Error("unknown alpha schedule '" + name + "' (expected constant or harmonic)");
}

void BootstrapConfig::validate() const {
  if (games_per_iteration <= 0) throw Error("games per iteration must be positive");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw Error("alpha must lie in [0, 1]");
  if (!(gamma > 0.0 && gamma <= 1.0)) throw Error("gamma must lie in (0, 1]");
  if (!(eta > 0.0 && eta < 1.0)) throw Error("eta must lie in (0, 1)");
  if (!(reach_rate > 0.0 && reach_rate <= 1.0)) throw Error("reach rate must lie in (0, 1]");
  if (lambda.mode == LambdaMode::kCfrEquivalent) {
    throw Error("the bootstrap solver cannot use the cfr-equivalent schedule");
  }
  lambda.validate();
}

Trajectory sample_trajectory(const Game& game, Player player,
                             const StrategyProfile& behavior_player,
                             const StrategyProfile& behavior_opponent,
                             const StrategyProfile& reference, Rng& rng) {
  Trajectory traj;
  traj.player = player;
  Transition pending;  // the virtual root decision
  double reach = 1.0;
  int cur = 0;
  while (true) {
    ++traj.nodes;
    const History& node = game.history(cur);
    if (node.is_terminal()) {
      pending.next = cur;
      traj.transitions.push_back(pending);
      traj.terminal = cur;
      traj.payoff = game.payoff(cur, player);
      return traj;
    }
    int a = 0;
    if (node.is_chance()) {
      double u = rng.uniform();
      a = node.num_children - 1;
      for (int c = 0; c < node.num_children; ++c) {
        const double p = game.history(node.first_child + c).chance_prob;
        if (u < p) {
          a = c;
          break;
        }
        u -= p;
      }
      reach *= game.history(node.first_child + a).chance_prob;
    } else if (node.player() == player) {
      pending.next = cur;
      traj.transitions.push_back(pending);
      a = rng.sample(behavior_player[node.infoset]);
      pending = Transition{cur, a, -1, reach};
    } else {
      a = rng.sample(behavior_opponent[node.infoset]);
      reach *= reference[node.infoset][a];
    }
    cur = game.child(cur, a);
  }
}

BootstrapTables::BootstrapTables(const Game& game)
    : values(game),
      visits(game.num_infoset_actions(), 0),
      reach_estimate(game.num_infosets(), 1.0),
      reach_seen(game.num_infosets(), 0) {
  for (Player p = 0; p < kNumPlayers; ++p) {
    lower[p] = game.min_payoff(p) - game.global_delta();
    upper[p] = game.max_payoff(p) + game.global_delta();
  }
}

double BootstrapTables::infoset_value(const Game& game, int infoset, double beta) const {
  auto v = values[infoset];
  if (beta == 0.0 || game.infoset(infoset).num_actions() == 1) {
    return *std::max_element(v.begin(), v.end());
  }
  return solve_rsv_scalar(v, beta);
}

void BootstrapTables::observe_reach(int infoset, double reach, double rate) {
  if (!reach_seen[infoset]) {
    reach_seen[infoset] = 1;
    reach_estimate[infoset] = reach;
    return;
  }
  reach_estimate[infoset] += rate * (reach - reach_estimate[infoset]);
}

void bootstrap_update(const Game& game, BootstrapTables& tables, Player player,
                      const Transition& transition, double payoff_if_terminal, double alpha,
                      double gamma, double next_beta) {
  const History& next = game.history(transition.next);
  const double target = next.is_terminal()
                            ? payoff_if_terminal
                            : gamma * tables.infoset_value(game, next.infoset, next_beta);
  double& entry = transition.history < 0
                      ? tables.root[player]
                      : tables.values.values()[tables.slot(
                            game, game.history(transition.history).infoset, transition.action)];
  entry += alpha * (target - entry);
  entry = std::clamp(entry, tables.lower[player], tables.upper[player]);
}

double bootstrap_beta(const LambdaSchedule& schedule, double coefficient, const Infoset& info,
                      double reach, double t) {
  if (!(reach > 0.0)) reach = 1.0;
  switch (schedule.mode) {
    case LambdaMode::kZero:
      return 0.0;
    case LambdaMode::kConstant:
      return coefficient / ((reach * t) * (reach * t));
    case LambdaMode::kCorollary:
      return coefficient * info.delta * info.delta * info.num_actions() / (reach * t);
    case LambdaMode::kCfrEquivalent:
      break;
  }
  throw Error("the bootstrap solver cannot use the cfr-equivalent schedule");
}

namespace {

double step_size(AlphaSchedule schedule, double alpha, std::int64_t visits) {
  if (schedule == AlphaSchedule::kConstant) return alpha;
  return alpha / (1.0 + alpha * static_cast<double>(visits));
}

// Applies one trajectory's updates in order; `beta_of` maps an infoset to its
// budget.
template <typename BetaOf>
void apply_trajectory(const Game& game, BootstrapTables& tables, const Trajectory& traj,
                      double alpha, AlphaSchedule schedule, double gamma, BetaOf beta_of) {
  for (const Transition& tr : traj.transitions) {
    const History& next = game.history(tr.next);
    const double beta = next.is_terminal() ? 0.0 : beta_of(next.infoset);
    std::int64_t& visits =
        tr.history < 0
            ? tables.root_visits[traj.player]
            : tables.visits[tables.slot(game, game.history(tr.history).infoset, tr.action)];
    bootstrap_update(game, tables, traj.player, tr, traj.payoff,
                     step_size(schedule, alpha, visits), gamma, beta);
    ++visits;
  }
}

}  // namespace

BootstrapSolver::BootstrapSolver(std::shared_ptr<const Game> game, BootstrapConfig config)
    : game_(std::move(game)),
      config_(config),
      rng_(config.seed),
      current_(StrategyProfile::uniform(*game_)),
      uniform_(StrategyProfile::uniform(*game_)),
      average_(*game_),
      tables_(*game_) {
  config_.validate();
  if (config_.lambda.adaptive) {
    const double initial = config_.lambda.coefficient > 0.0 ? config_.lambda.coefficient
                                                            : config_.lambda.adaptive_floor;
    controller_ = std::make_unique<AdaptiveLambdaController>(initial, config_.lambda.beta_amp,
                                                             config_.lambda.beta_damp);
  }
}

double BootstrapSolver::lambda_coefficient() const {
  if (controller_) return controller_->value();
  return config_.lambda.mode == LambdaMode::kZero ? 0.0 : config_.lambda.coefficient;
}

double BootstrapSolver::beta(int infoset, double coefficient, double t) const {
  return bootstrap_beta(config_.lambda, coefficient, game_->infoset(infoset),
                        tables_.reach_estimate[infoset], t);
}

void BootstrapSolver::update_current(double coefficient) {
  const Game& game = *game_;
  const double t = static_cast<double>(iteration_ - 1);
  std::vector<double> regrets;
  for (int i = 0; i < game.num_infosets(); ++i) {
    const double base = tables_.infoset_value(game, i, beta(i, coefficient, t));
    auto v = tables_.values[i];
    regrets.assign(v.begin(), v.end());
    for (double& r : regrets) r -= base;
    regret_matching(regrets, current_[i]);
  }
}

BootstrapMetrics BootstrapSolver::iterate() {
  const Game& game = *game_;
  BootstrapMetrics m;
  ++iteration_;
  const double coefficient = lambda_coefficient();
  if (iteration_ > 1) update_current(coefficient);
  const StrategyProfile avg = average();
  const double t = static_cast<double>(iteration_);
  auto beta_of = [&](int infoset) { return beta(infoset, coefficient, t); };

  for (Player p = 0; p < kNumPlayers; ++p) {
    for (int k = 0; k < config_.games_per_iteration; ++k) {
      const StrategyProfile& opponent = rng_.uniform() < config_.eta ? current_ : avg;
      const bool followed = rng_.uniform() < config_.eta;
      const StrategyProfile& own = followed ? current_
                                   : config_.mode == LearningMode::kAsymmetric ? uniform_
                                                                               : avg;
      const Trajectory traj = sample_trajectory(game, p, own, opponent, avg, rng_);
      for (const Transition& tr : traj.transitions) {
        if (tr.history >= 0) {
          tables_.observe_reach(game.history(tr.history).infoset, tr.others_reach,
                                config_.reach_rate);
        }
      }
      apply_trajectory(game, tables_, traj, config_.alpha, config_.alpha_schedule,
                       config_.gamma, beta_of);
      if (followed) {
        for (const Transition& tr : traj.transitions) {
          if (tr.history < 0) continue;
          const int i = game.history(tr.history).infoset;
          average_.add_at(i, current_[i]);
        }
      }
      m.nodes_touched += traj.nodes;
      m.samples += static_cast<std::int64_t>(traj.transitions.size());
    }
  }

  m.iteration = iteration_;
  m.lambda = coefficient;
  m.value_sum = tables_.root[kPlayer1] + tables_.root[kPlayer2];
  if (controller_) controller_->update(m.value_sum);
  return m;
}

BootstrapTables exact_normalized_rsv(const Game& game, const StrategyProfile& average,
                                     double lambda, double t) {
  const SuccessorIndex successors(game);
  const ReachTable reaches = compute_reaches(game, average);
  std::vector<double> budgets(game.num_infosets(), 0.0);
  for (int i = 0; i < game.num_infosets(); ++i) {
    const Infoset& info = game.infoset(i);
    budgets[i] = lambda * reaches.infoset_others(game, i) * info.delta * info.delta *
                 info.num_actions() * t;
  }
  BootstrapTables exact(game);
  for (Player p = 0; p < kNumPlayers; ++p) {
    const RsvTable rsv = compute_rsv_table(game, successors, reaches, budgets, p, t);
    const NormalizedRsv normalized = normalize(game, rsv, reaches);
    exact.root[p] = normalized.root;
    for (int i : game.infosets_of(p)) {
      exact.reach_seen[i] = normalized.defined[i];
      exact.reach_estimate[i] = normalized.others_reach[i];
      auto src = normalized.action_values[i];
      auto dst = exact.values[i];
      std::copy(src.begin(), src.end(), dst.begin());
    }
  }
  return exact;
}

std::vector<ProbePoint> rsv_convergence_probe(const Game& game,
                                                   const StrategyProfile& average,
                                                   const StrategyProfile& learner_current,
                                                   const ProbeConfig& config,
                                                   std::int64_t max_games,
                                                   const std::vector<std::int64_t>& checkpoints) {
  const BootstrapTables exact = exact_normalized_rsv(game, average, config.lambda, config.t);
  LambdaSchedule schedule;
  schedule.mode = LambdaMode::kCorollary;
  std::vector<double> beta(game.num_infosets(), 0.0);
  for (int i = 0; i < game.num_infosets(); ++i) {
    if (exact.reach_seen[i]) {
      beta[i] = bootstrap_beta(schedule, config.lambda, game.infoset(i), exact.reach_estimate[i],
                               config.t);
    }
  }
  auto beta_of = [&](int infoset) { return beta[infoset]; };
  auto max_error = [&](const BootstrapTables& tables) {
    double err = 0.0;
    for (int i = 0; i < game.num_infosets(); ++i) {
      if (!exact.reach_seen[i]) continue;
      auto a = tables.values[i];
      auto b = exact.values[i];
      for (std::size_t k = 0; k < a.size(); ++k) err = std::max(err, std::abs(a[k] - b[k]));
    }
    return err;
  };

  const StrategyProfile uniform = StrategyProfile::uniform(game);
  BootstrapTables tables(game);
  Rng rng(config.seed);
  std::vector<std::int64_t> marks = checkpoints;
  std::sort(marks.begin(), marks.end());
  std::vector<ProbePoint> curve;
  std::size_t next_mark = 0;
  while (next_mark < marks.size() && marks[next_mark] <= 0) {
    curve.push_back({marks[next_mark++], max_error(tables)});
  }
  for (std::int64_t k = 1; k <= max_games; ++k) {
    const Player p = static_cast<Player>((k - 1) % kNumPlayers);
    const StrategyProfile& own = rng.uniform() < config.eta ? learner_current : uniform;
    const Trajectory traj = sample_trajectory(game, p, own, average, average, rng);
    apply_trajectory(game, tables, traj, config.alpha, config.alpha_schedule, config.gamma,
                     beta_of);
    while (next_mark < marks.size() && marks[next_mark] == k) {
      curve.push_back({k, max_error(tables)});
      ++next_mark;
    }
  }
  return curve;
}

}  // namespace recfr
