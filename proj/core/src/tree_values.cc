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

#include "recfr/tree_values.hpp"

#include <algorithm>
#include <cmath>

namespace recfr {

double ReachTable::infoset_own(const Game& game, int infoset) const {
  const Infoset& info = game.infoset(infoset);
  return own[info.player][info.histories.front()];
}

double ReachTable::infoset_others(const Game& game, int infoset) const {
  const Infoset& info = game.infoset(infoset);
  double sum = 0.0;
  for (int h : info.histories) sum += others(info.player, h);
  return sum;
}

ReachTable compute_reaches(const Game& game, const StrategyProfile& profile) {
  const int n = game.num_histories();
  ReachTable reach;
  reach.own[0].assign(n, 1.0);
  reach.own[1].assign(n, 1.0);
  reach.chance.assign(n, 1.0);
  for (int h = 1; h < n; ++h) {
    const History& node = game.history(h);
    const History& parent = game.history(node.parent);
    reach.own[0][h] = reach.own[0][node.parent];
    reach.own[1][h] = reach.own[1][node.parent];
    reach.chance[h] = reach.chance[node.parent];
    if (parent.is_chance()) {
      reach.chance[h] *= node.chance_prob;
    } else {
      reach.own[parent.player()][h] *= profile[parent.infoset][node.action];
    }
  }
  return reach;
}

namespace {

CfValueTable empty_table(const Game& game, Player player) {
  CfValueTable table;
  table.player = player;
  table.action_values = ActionTable(game);
  table.infoset_values.assign(game.num_infosets(), 0.0);
  return table;
}

double terminal_sum(const Game& game, const ReachTable& reaches,
                    const SuccessorIndex::Successors& succ, Player player) {
  double sum = 0.0;
  for (int z : succ.terminals) sum += reaches.others(player, z) * game.payoff(z, player);
  return sum;
}

double successor_sum(const SuccessorIndex::Successors& succ, const std::vector<double>& values) {
  double sum = 0.0;
  for (int i : succ.infosets) sum += values[i];
  return sum;
}

}  // namespace

CfValueTable counterfactual_values_direct(const Game& game, const StrategyProfile& profile,
                                          Player player) {
  const ReachTable reaches = compute_reaches(game, profile);
  CfValueTable table = empty_table(game, player);
  for (int z : game.terminals()) {
    const double weighted = reaches.others(player, z) * game.payoff(z, player);
    table.root += weighted * reaches.player(player, z);
    // `below` is the player's own probability of the path strictly after h.a.
    double below = 1.0;
    for (int cur = z; cur > 0; cur = game.history(cur).parent) {
      const History& parent = game.history(game.history(cur).parent);
      if (!parent.is_player() || parent.player() != player) continue;
      const int a = game.history(cur).action;
      table.action_values[parent.infoset][a] += weighted * below;
      below *= profile[parent.infoset][a];
    }
  }
  for (int i : game.infosets_of(player)) {
    double v = 0.0;
    auto probs = profile[i];
    auto values = table.action_values[i];
    for (std::size_t a = 0; a < probs.size(); ++a) v += probs[a] * values[a];
    table.infoset_values[i] = v;
  }
  return table;
}

CfValueTable counterfactual_values_recursive(const Game& game, const SuccessorIndex& successors,
                                             const StrategyProfile& profile,
                                             const ReachTable& reaches, Player player) {
  CfValueTable table = empty_table(game, player);
  for (int i : successors.bottom_up(player)) {
    auto values = table.action_values[i];
    auto probs = profile[i];
    double v = 0.0;
    for (std::size_t a = 0; a < values.size(); ++a) {
      const auto& succ = successors.of(i, static_cast<int>(a));
      values[a] = terminal_sum(game, reaches, succ, player) +
                  successor_sum(succ, table.infoset_values);
      v += probs[a] * values[a];
    }
    table.infoset_values[i] = v;
  }
  const auto& root = successors.root(player);
  table.root = terminal_sum(game, reaches, root, player) +
               successor_sum(root, table.infoset_values);
  return table;
}

CfValueTable counterfactual_values_recursive(const Game& game, const SuccessorIndex& successors,
                                             const StrategyProfile& profile, Player player) {
  return counterfactual_values_recursive(game, successors, profile,
                                         compute_reaches(game, profile), player);
}

double expected_payoff(const Game& game, const ReachTable& reaches, Player player) {
  double sum = 0.0;
  for (int z : game.terminals()) sum += reaches.total(z) * game.payoff(z, player);
  return sum;
}

double expected_payoff(const Game& game, const StrategyProfile& profile, Player player) {
  return expected_payoff(game, compute_reaches(game, profile), player);
}

BestResponse best_response(const Game& game, const SuccessorIndex& successors,
                           const StrategyProfile& profile, Player player) {
  const ReachTable reaches = compute_reaches(game, profile);
  BestResponse br{profile, 0.0};
  std::vector<double> values(game.num_infosets(), 0.0);
  for (int i : successors.bottom_up(player)) {
    const int n = game.infoset(i).num_actions();
    int best = 0;
    double best_value = 0.0;
    for (int a = 0; a < n; ++a) {
      const auto& succ = successors.of(i, a);
      const double v = terminal_sum(game, reaches, succ, player) + successor_sum(succ, values);
      if (a == 0 || v > best_value) {
        best = a;
        best_value = v;
      }
    }
    values[i] = best_value;
    auto probs = br.strategy[i];
    std::fill(probs.begin(), probs.end(), 0.0);
    probs[best] = 1.0;
  }
  const auto& root = successors.root(player);
  br.value = terminal_sum(game, reaches, root, player) + successor_sum(root, values);
  return br;
}

BestResponse best_response(const Game& game, const StrategyProfile& profile, Player player) {
  return best_response(game, SuccessorIndex(game), profile, player);
}

Exploitability exploitability(const Game& game, const SuccessorIndex& successors,
                              const StrategyProfile& profile) {
  Exploitability e;
  for (Player p = 0; p < kNumPlayers; ++p) {
    e.per_player[p] = best_response(game, successors, profile, p).value;
    e.total += e.per_player[p];
  }
  e.mbbg = e.total / game.big_blind() * 1000.0;
  return e;
}

Exploitability exploitability(const Game& game, const StrategyProfile& profile) {
  return exploitability(game, SuccessorIndex(game), profile);
}

StrategyProfile combine(const Game& game, const StrategyProfile& profile,
                        const StrategyProfile& strategy, Player player) {
  StrategyProfile out = profile;
  for (int i : game.infosets_of(player)) {
    auto src = strategy[i];
    std::copy(src.begin(), src.end(), out[i].begin());
  }
  return out;
}

double payoff_difference_identity_check(const Game& game, const StrategyProfile& profile,
                                        const StrategyProfile& alt_strategy, Player player) {
  const SuccessorIndex successors(game);
  const CfValueTable values = counterfactual_values_recursive(game, successors, profile, player);
  const StrategyProfile mixed = combine(game, profile, alt_strategy, player);
  const ReachTable alt_reach = compute_reaches(game, mixed);
  double decomposition = 0.0;
  for (int i : game.infosets_of(player)) {
    const double own = alt_reach.infoset_own(game, i);
    auto v = values.action_values[i];
    auto probs = alt_strategy[i];
    for (std::size_t a = 0; a < v.size(); ++a) {
      decomposition += own * (v[a] - values.infoset_values[i]) * probs[a];
    }
  }
  const double lhs = expected_payoff(game, alt_reach, player) - values.root;
  return std::abs(lhs - decomposition);
}

}  // namespace recfr
