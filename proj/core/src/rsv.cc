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

#include "recfr/rsv.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace recfr {

void regret_matching(std::span<const double> regrets, std::span<double> out) {
  if (regrets.empty()) throw Error("regret matching needs at least one action");
  double positive = 0.0;
  std::size_t best = 0;
  for (std::size_t a = 0; a < regrets.size(); ++a) {
    if (std::isnan(regrets[a])) throw Error("regret matching input contains NaN");
    if (regrets[a] > 0.0) positive += regrets[a];
    if (regrets[a] > regrets[best]) best = a;
  }
  if (positive > 0.0) {
    for (std::size_t a = 0; a < regrets.size(); ++a) {
      out[a] = regrets[a] > 0.0 ? regrets[a] / positive : 0.0;
    }
    return;
  }
  std::fill(out.begin(), out.end(), 0.0);
  out[best] = 1.0;
}

std::vector<double> regret_matching(std::span<const double> regrets) {
  std::vector<double> out(regrets.size());
  regret_matching(regrets, out);
  return out;
}

double rsv_gap(std::span<const double> values, double x) {
  double sum = 0.0;
  for (double v : values) {
    if (v > x) sum += (v - x) * (v - x);
  }
  return sum;
}

double solve_rsv_scalar(std::span<const double> values, double lambda) {
  if (values.empty()) throw Error("RSV solve needs at least one action value");
  if (std::isnan(lambda) || lambda < 0.0) throw Error("RSV budget must be a nonnegative number");
  for (double v : values) {
    if (!std::isfinite(v)) throw Error("RSV action values must be finite");
  }
  const double top = *std::max_element(values.begin(), values.end());
  if (lambda == 0.0) return top;

  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  // Running mean and centered sum of squares of the k largest values: on the
  // interval where exactly those k are above x, f(x) = k (mean - x)^2 + m2.
  double mean = 0.0;
  double m2 = 0.0;
  const std::size_t n = sorted.size();
  for (std::size_t k = 1; k <= n; ++k) {
    const double v = sorted[k - 1];
    const double delta = v - mean;
    mean += delta / static_cast<double>(k);
    m2 += delta * (v - mean);
    if (lambda < m2) continue;
    const double x = mean - std::sqrt((lambda - m2) / static_cast<double>(k));
    const double lower = k < n ? sorted[k] : -std::numeric_limits<double>::infinity();
    if (x >= lower && x <= sorted[k - 1]) return std::min(x, top);
  }

  // Rounding rejected every interval root; f is strictly decreasing on
  // [top - sqrt(lambda), top], which brackets the solution.
  double lo = top - std::sqrt(lambda);
  double hi = top;
  for (int iter = 0; iter < 200 && lo < hi; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (rsv_gap(values, mid) > lambda) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

namespace {

double terminal_sum(const Game& game, const ReachTable& reaches,
                    const SuccessorIndex::Successors& succ, Player player) {
  double sum = 0.0;
  for (int z : succ.terminals) sum += reaches.others(player, z) * game.payoff(z, player);
  return sum;
}

double successor_sum(const SuccessorIndex::Successors& succ, std::span<const double> values) {
  double sum = 0.0;
  for (int i : succ.infosets) sum += values[i];
  return sum;
}

}  // namespace

RsvTable compute_rsv_table(const Game& game, const SuccessorIndex& successors,
                           const ReachTable& average_reaches, std::span<const double> lambda,
                           Player player, double scale) {
  if (static_cast<int>(lambda.size()) != game.num_infosets()) {
    throw Error("lambda table does not match the game's infosets");
  }
  if (!(scale > 0.0)) throw Error("RSV scale must be positive");
  RsvTable table;
  table.player = player;
  table.scale = scale;
  table.action_values = ActionTable(game);
  table.infoset_values.assign(game.num_infosets(), 0.0);
  std::vector<double> scaled;
  for (int i : successors.bottom_up(player)) {
    auto values = table.action_values[i];
    for (std::size_t a = 0; a < values.size(); ++a) {
      const auto& succ = successors.of(i, static_cast<int>(a));
      values[a] = terminal_sum(game, average_reaches, succ, player) +
                  successor_sum(succ, table.infoset_values);
    }
    if (values.size() == 1) {
      table.infoset_values[i] = values[0];
      continue;
    }
    scaled.assign(values.begin(), values.end());
    for (double& v : scaled) v *= scale;
    table.infoset_values[i] = solve_rsv_scalar(scaled, lambda[i]) / scale;
  }
  const auto& root = successors.root(player);
  table.root = terminal_sum(game, average_reaches, root, player) +
               successor_sum(root, table.infoset_values);
  return table;
}

RsvTable compute_rsv_table(const Game& game, const SuccessorIndex& successors,
                           const StrategyProfile& average, std::span<const double> lambda,
                           Player player, double scale) {
  return compute_rsv_table(game, successors, compute_reaches(game, average), lambda, player,
                           scale);
}

std::array<RsvTable, kNumPlayers> compute_rsv_tables(const Game& game,
                                                     const SuccessorIndex& successors,
                                                     const StrategyProfile& average,
                                                     std::span<const double> lambda,
                                                     double scale) {
  const ReachTable reaches = compute_reaches(game, average);
  return {compute_rsv_table(game, successors, reaches, lambda, kPlayer1, scale),
          compute_rsv_table(game, successors, reaches, lambda, kPlayer2, scale)};
}

double rsv_recursion(const Game& game, const SuccessorIndex& successors,
                     const ReachTable& reaches, std::span<const double> infoset_values,
                     Player player, ActionTable& action_values) {
  if (action_values.empty()) action_values = ActionTable(game);
  for (int i : game.infosets_of(player)) {
    auto values = action_values[i];
    for (std::size_t a = 0; a < values.size(); ++a) {
      const auto& succ = successors.of(i, static_cast<int>(a));
      values[a] = terminal_sum(game, reaches, succ, player) + successor_sum(succ, infoset_values);
    }
  }
  const auto& root = successors.root(player);
  return terminal_sum(game, reaches, root, player) + successor_sum(root, infoset_values);
}

ActionTable substitute_regrets(const Game& game, const RsvTable& rsv, double t) {
  ActionTable regrets(game);
  for (int i : game.infosets_of(rsv.player)) {
    auto values = rsv.action_values[i];
    auto out = regrets[i];
    const double base = t * rsv.infoset_values[i];
    for (std::size_t a = 0; a < values.size(); ++a) out[a] = t * values[a] - base;
  }
  return regrets;
}

NormalizedRsv normalize(const Game& game, const RsvTable& rsv, const ReachTable& reaches) {
  NormalizedRsv out;
  out.player = rsv.player;
  out.action_values = ActionTable(game);
  out.infoset_values.assign(game.num_infosets(), 0.0);
  out.defined.assign(game.num_infosets(), 0);
  out.others_reach.assign(game.num_infosets(), 0.0);
  out.root = rsv.root;
  for (int i : game.infosets_of(rsv.player)) {
    const double reach = reaches.infoset_others(game, i);
    out.others_reach[i] = reach;
    if (!(reach > 0.0)) continue;
    out.defined[i] = 1;
    auto src = rsv.action_values[i];
    auto dst = out.action_values[i];
    for (std::size_t a = 0; a < src.size(); ++a) dst[a] = src[a] / reach;
    out.infoset_values[i] = rsv.infoset_values[i] / reach;
  }
  return out;
}

double transition_probability(const Game& game, const StrategyProfile& profile, Player player,
                              int from, int to) {
  double prob = 1.0;
  for (int cur = to; cur != from; cur = game.history(cur).parent) {
    if (cur <= 0) throw Error("transition target is not a descendant of its source");
    const History& node = game.history(cur);
    const History& parent = game.history(node.parent);
    if (parent.is_chance()) {
      prob *= node.chance_prob;
    } else if (parent.player() != player) {
      prob *= profile[parent.infoset][node.action];
    }
  }
  return prob;
}

ExpectationCheck expectation_identity_check(const Game& game, const SuccessorIndex& successors,
                                            const StrategyProfile& average,
                                            const NormalizedRsv& rsv) {
  const Player p = rsv.player;
  const ReachTable reaches = compute_reaches(game, average);
  ExpectationCheck check;
  for (int i : game.infosets_of(p)) {
    if (!rsv.defined[i]) {
      check.skipped.push_back(i);
      continue;
    }
    const double infoset_reach = rsv.others_reach[i];
    const int n = game.infoset(i).num_actions();
    for (int a = 0; a < n; ++a) {
      double expectation = 0.0;
      for (const auto& edge : successors.of(i, a).edges) {
        const double weight =
            reaches.others(p, edge.source) / infoset_reach *
            transition_probability(game, average, p, game.child(edge.source, a), edge.target);
        if (weight == 0.0) continue;
        const History& next = game.history(edge.target);
        const double value =
            next.is_terminal() ? game.payoff(edge.target, p) : rsv.infoset_values[next.infoset];
        expectation += weight * value;
      }
      check.max_residual =
          std::max(check.max_residual, std::abs(expectation - rsv.action_values[i][a]));
    }
  }
  return check;
}

}  // namespace recfr
