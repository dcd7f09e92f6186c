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

#include "recfr/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace recfr {

const char* to_string(LambdaMode mode) {
  switch (mode) {
    case LambdaMode::kZero:
      return "zero";
    case LambdaMode::kConstant:
      return "constant";
    case LambdaMode::kCorollary:
      return "corollary1";
    case LambdaMode::kCfrEquivalent:
      return "cfr-equivalent";
  }
  return "?";
}

LambdaMode parse_lambda_mode(const std::string& name) {
  for (LambdaMode mode : {LambdaMode::kZero, LambdaMode::kConstant, LambdaMode::kCorollary,
                          LambdaMode::kCfrEquivalent}) {
    if (name == to_string(mode)) return mode;
  }
  throw Error("unknown lambda mode '" + name +
              "' (expected zero, constant, corollary1 or cfr-equivalent)");
}

void LambdaSchedule::validate() const {
  if (!std::isfinite(coefficient) || coefficient < 0.0) {
    throw Error("lambda coefficient must be a finite nonnegative number");
  }
  if (!adaptive) return;
  if (mode != LambdaMode::kConstant && mode != LambdaMode::kCorollary) {
    throw Error(std::string("adaptive lambda needs mode constant or corollary1, got ") +
                to_string(mode));
  }
  if (!(beta_amp > 1.0) || !std::isfinite(beta_amp)) throw Error("beta_amp must be > 1");
  if (!(beta_damp > 0.0 && beta_damp < 1.0)) throw Error("beta_damp must lie in (0, 1)");
  if (!(adaptive_floor > 0.0)) throw Error("adaptive lambda floor must be positive");
}

AdaptiveLambdaController::AdaptiveLambdaController(double initial, double beta_amp,
                                                   double beta_damp)
    : value_(initial), beta_amp_(beta_amp), beta_damp_(beta_damp) {
  if (!(initial > 0.0) || !std::isfinite(initial)) {
    throw Error("adaptive lambda must start positive");
  }
  if (!(beta_amp > 1.0)) throw Error("beta_amp must be > 1");
  if (!(beta_damp > 0.0 && beta_damp < 1.0)) throw Error("beta_damp must lie in (0, 1)");
}

double AdaptiveLambdaController::update(double value_sum) {
  value_ *= value_sum > 0.0 ? beta_amp_ : beta_damp_;
  value_ = std::clamp(value_, std::numeric_limits<double>::min(),
                      std::numeric_limits<double>::max());
  return value_;
}

AverageStrategy::AverageStrategy(const Game& game)
    : numerators_(game), denominators_(game.num_infosets(), 0.0) {}

void AverageStrategy::add(const Game& game, const StrategyProfile& sigma,
                          const ReachTable& reaches, double weight) {
  for (int i = 0; i < game.num_infosets(); ++i) {
    const double reach = weight * reaches.infoset_own(game, i);
    if (reach == 0.0) continue;
    add_at(i, sigma[i], reach);
  }
}

void AverageStrategy::add_at(int infoset, std::span<const double> sigma, double weight) {
  auto num = numerators_[infoset];
  for (std::size_t a = 0; a < num.size(); ++a) num[a] += weight * sigma[a];
  denominators_[infoset] += weight;
}

StrategyProfile AverageStrategy::profile(const Game& game) const {
  StrategyProfile out(game);
  for (int i = 0; i < game.num_infosets(); ++i) {
    auto dst = out[i];
    auto num = numerators_[i];
    const double den = denominators_[i];
    for (std::size_t a = 0; a < dst.size(); ++a) {
      dst[a] = den > 0.0 ? num[a] / den : 1.0 / static_cast<double>(dst.size());
    }
  }
  return out;
}

namespace {

void regret_matching_profile(const Game& game, const ActionTable& regrets,
                             StrategyProfile& out) {
  for (int i = 0; i < game.num_infosets(); ++i) regret_matching(regrets[i], out[i]);
}

void accumulate_regrets(const Game& game, const CfValueTable& values, ActionTable& regrets) {
  for (int i : game.infosets_of(values.player)) {
    auto v = values.action_values[i];
    auto r = regrets[i];
    for (std::size_t a = 0; a < v.size(); ++a) r[a] += v[a] - values.infoset_values[i];
  }
}

std::shared_ptr<const SuccessorIndex> ensure_successors(
    const Game& game, std::shared_ptr<const SuccessorIndex> successors) {
  return successors ? std::move(successors) : build_successors(game);
}

// Per-infoset budget of the schedule at iteration t for a coefficient.
double schedule_lambda(LambdaMode mode, const Game& game, const ReachTable& reaches, int infoset,
                       double coefficient, double t) {
  switch (mode) {
    case LambdaMode::kZero:
      return 0.0;
    case LambdaMode::kConstant:
      return coefficient;
    case LambdaMode::kCorollary: {
      const Infoset& info = game.infoset(infoset);
      return coefficient * reaches.infoset_others(game, infoset) * info.delta * info.delta *
             info.num_actions() * t;
    }
    case LambdaMode::kCfrEquivalent:
      break;
  }
  throw Error("lambda mode has no closed-form schedule");
}

}  // namespace

CfrSolver::CfrSolver(std::shared_ptr<const Game> game,
                     std::shared_ptr<const SuccessorIndex> successors)
    : game_(std::move(game)),
      successors_(ensure_successors(*game_, std::move(successors))),
      current_(StrategyProfile::uniform(*game_)),
      regrets_(*game_),
      average_(*game_) {}

void CfrSolver::set_cumulative_regrets(ActionTable regrets) {
  if (regrets.values().size() != regrets_.values().size()) {
    throw Error("regret table does not match the game");
  }
  regrets_ = std::move(regrets);
  warm_ = true;
}

IterationMetrics CfrSolver::iterate() {
  const Game& game = *game_;
  ++iteration_;
  if (iteration_ > 1 || warm_) regret_matching_profile(game, regrets_, current_);
  const ReachTable reaches = compute_reaches(game, current_);
  average_.add(game, current_, reaches);
  for (Player p = 0; p < kNumPlayers; ++p) {
    accumulate_regrets(game,
                       counterfactual_values_recursive(game, *successors_, current_, reaches, p),
                       regrets_);
  }
  IterationMetrics m;
  m.iteration = iteration_;
  m.nodes_touched = 3 * static_cast<std::int64_t>(game.num_histories());
  return m;
}

RecfrSolver::RecfrSolver(std::shared_ptr<const Game> game, LambdaSchedule schedule,
                         std::shared_ptr<const SuccessorIndex> successors)
    : game_(std::move(game)),
      successors_(ensure_successors(*game_, std::move(successors))),
      schedule_(schedule),
      current_(StrategyProfile::uniform(*game_)),
      substitute_(*game_),
      average_(*game_),
      lambda_(game_->num_infosets(), 0.0) {
  schedule_.validate();
  if (schedule_.adaptive) {
    const double initial =
        schedule_.coefficient > 0.0 ? schedule_.coefficient : schedule_.adaptive_floor;
    controller_ = std::make_unique<AdaptiveLambdaController>(initial, schedule_.beta_amp,
                                                             schedule_.beta_damp);
  }
  if (schedule_.mode == LambdaMode::kCfrEquivalent) cfr_regrets_ = ActionTable(*game_);
}

double RecfrSolver::lambda_coefficient() const {
  if (controller_) return controller_->value();
  switch (schedule_.mode) {
    case LambdaMode::kConstant:
    case LambdaMode::kCorollary:
      return schedule_.coefficient;
    default:
      return 0.0;
  }
}

void RecfrSolver::fill_lambda(const ReachTable& average_reaches, double coefficient) {
  const Game& game = *game_;
  if (schedule_.mode == LambdaMode::kCfrEquivalent) {
    for (int i = 0; i < game.num_infosets(); ++i) {
      double sum = 0.0;
      for (double r : cfr_regrets_[i]) {
        if (r > 0.0) sum += r * r;
      }
      lambda_[i] = sum;
    }
    return;
  }
  for (int i = 0; i < game.num_infosets(); ++i) {
    lambda_[i] = schedule_lambda(schedule_.mode, game, average_reaches, i, coefficient,
                                 static_cast<double>(iteration_));
  }
}

IterationMetrics RecfrSolver::iterate() {
  const Game& game = *game_;
  const std::int64_t n = game.num_histories();
  IterationMetrics m;
  ++iteration_;
  if (iteration_ > 1) regret_matching_profile(game, substitute_, current_);
  const ReachTable reaches = compute_reaches(game, current_);
  average_.add(game, current_, reaches);
  m.nodes_touched += n;

  if (schedule_.mode == LambdaMode::kCfrEquivalent) {
    for (Player p = 0; p < kNumPlayers; ++p) {
      accumulate_regrets(
          game, counterfactual_values_recursive(game, *successors_, current_, reaches, p),
          cfr_regrets_);
    }
    m.nodes_touched += 2 * n;
  }

  const StrategyProfile avg = average();
  const ReachTable average_reaches = compute_reaches(game, avg);
  const double coefficient = lambda_coefficient();
  fill_lambda(average_reaches, coefficient);
  const double t = static_cast<double>(iteration_);
  for (Player p = 0; p < kNumPlayers; ++p) {
    rsv_[p] = compute_rsv_table(game, *successors_, average_reaches, lambda_, p, t);
    for (int i : game.infosets_of(p)) {
      auto values = rsv_[p].action_values[i];
      auto out = substitute_[i];
      const double base = t * rsv_[p].infoset_values[i];
      for (std::size_t a = 0; a < values.size(); ++a) out[a] = t * values[a] - base;
    }
  }
  m.nodes_touched += 3 * n;

  m.iteration = iteration_;
  m.lambda = coefficient;
  m.value_sum = rsv_[kPlayer1].root + rsv_[kPlayer2].root;
  if (controller_) controller_->update(m.value_sum);
  return m;
}

WarmCfrSolver::WarmCfrSolver(std::shared_ptr<const Game> game, const StrategyProfile& initial,
                             int virtual_iterations, LambdaSchedule schedule,
                             std::shared_ptr<const SuccessorIndex> successors)
    : game_(game),
      initial_(initial),
      virtual_iterations_(virtual_iterations),
      initial_average_(*game),
      cfr_(game, ensure_successors(*game, std::move(successors))) {
  const Game& g = *game_;
  if (virtual_iterations <= 0) {
    throw Error("warm start needs a positive number of virtual iterations");
  }
  if (schedule.mode == LambdaMode::kCfrEquivalent) {
    throw Error("warm start cannot use the cfr-equivalent schedule");
  }
  schedule.adaptive = false;
  schedule.validate();
  initial_.validate(g, 1e-9);

  const SuccessorIndex successors_index(g);
  const ReachTable reaches = compute_reaches(g, initial_);
  const double t = static_cast<double>(virtual_iterations);
  std::vector<double> lambda(g.num_infosets(), 0.0);
  for (int i = 0; i < g.num_infosets(); ++i) {
    lambda[i] = schedule_lambda(schedule.mode, g, reaches, i, schedule.coefficient, t);
  }
  initial_regrets_ = ActionTable(g);
  for (Player p = 0; p < kNumPlayers; ++p) {
    const RsvTable rsv = compute_rsv_table(g, successors_index, reaches, lambda, p, t);
    for (int i : g.infosets_of(p)) {
      auto values = rsv.action_values[i];
      auto out = initial_regrets_[i];
      const double base = t * rsv.infoset_values[i];
      for (std::size_t a = 0; a < values.size(); ++a) out[a] = t * values[a] - base;
    }
  }
  cfr_.set_cumulative_regrets(initial_regrets_);
  initial_average_.add(g, initial_, reaches, t);
}

IterationMetrics WarmCfrSolver::iterate() { return cfr_.iterate(); }

StrategyProfile WarmCfrSolver::average() const {
  if (cfr_.iteration() == 0) return initial_;
  const Game& g = *game_;
  const AverageStrategy& extra = cfr_.average_accumulator();
  const StrategyProfile extra_profile = extra.profile(g);
  const double tv = static_cast<double>(virtual_iterations_);
  const double te = static_cast<double>(cfr_.iteration());
  StrategyProfile out(g);
  for (int i = 0; i < g.num_infosets(); ++i) {
    auto dst = out[i];
    const double den = initial_average_.denominators()[i] + extra.denominators()[i];
    auto num_init = initial_average_.numerators()[i];
    auto num_extra = extra.numerators()[i];
    for (std::size_t a = 0; a < dst.size(); ++a) {
      dst[a] = den > 0.0 ? (num_init[a] + num_extra[a]) / den
                         : (tv * initial_[i][a] + te * extra_profile[i][a]) / (tv + te);
    }
  }
  return out;
}

WarmStartResult warm_start_cfr(std::shared_ptr<const Game> game, const StrategyProfile& initial,
                               int virtual_iterations, const LambdaSchedule& schedule,
                               int extra_iterations) {
  if (extra_iterations < 0) throw Error("extra iterations must be nonnegative");
  WarmCfrSolver solver(std::move(game), initial, virtual_iterations, schedule);
  WarmStartResult result;
  for (int t = 0; t < extra_iterations; ++t) result.log.push_back(solver.iterate());
  result.average = solver.average();
  return result;
}

}  // namespace recfr
