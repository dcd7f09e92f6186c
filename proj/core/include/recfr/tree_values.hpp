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

// Exact full-tree evaluation of strategy profiles.

#ifndef RECFR_TREE_VALUES_HPP_
#define RECFR_TREE_VALUES_HPP_

#include <array>
#include <vector>

#include "recfr/game.hpp"

namespace recfr {

// Reach probabilities factored by contributor.
struct ReachTable {
  std::array<std::vector<double>, kNumPlayers> own;  // pi_p(h)
  std::vector<double> chance;                        // chance contribution

  double player(Player p, int h) const { return own[p][h]; }
  // Opponent-plus-chance reach pi_{-p}(h).
  double others(Player p, int h) const { return own[opponent_of(p)][h] * chance[h]; }
  double total(int h) const { return own[0][h] * own[1][h] * chance[h]; }

  // pi_p(I): own reach of the infoset's player, shared by all its histories.
  double infoset_own(const Game& game, int infoset) const;
  // pi_{-p}(I) summed over the infoset's histories.
  double infoset_others(const Game& game, int infoset) const;
};

ReachTable compute_reaches(const Game& game, const StrategyProfile& profile);

// Counterfactual values of one player. Entries for infosets of the other
// player are left at zero.
struct CfValueTable {
  Player player = kPlayer1;
  ActionTable action_values;         // v_p(I, a)
  std::vector<double> infoset_values;  // v_p(I)
  double root = 0.0;                   // v_p, the player's expected payoff
};

// Sums over terminals explicitly.
CfValueTable counterfactual_values_direct(const Game& game, const StrategyProfile& profile,
                                          Player player);

// Bottom-up through the successor index.
CfValueTable counterfactual_values_recursive(const Game& game, const SuccessorIndex& successors,
                                             const StrategyProfile& profile, Player player);
CfValueTable counterfactual_values_recursive(const Game& game, const SuccessorIndex& successors,
                                             const StrategyProfile& profile,
                                             const ReachTable& reaches, Player player);

double expected_payoff(const Game& game, const StrategyProfile& profile, Player player);
double expected_payoff(const Game& game, const ReachTable& reaches, Player player);

struct BestResponse {
  StrategyProfile strategy;  // deterministic on the player's infosets, copied elsewhere
  double value = 0.0;        // u_p(BR, sigma_{-p})
};

// Backward induction over the player's infosets; ties go to the lowest action.
BestResponse best_response(const Game& game, const SuccessorIndex& successors,
                           const StrategyProfile& profile, Player player);
BestResponse best_response(const Game& game, const StrategyProfile& profile, Player player);

struct Exploitability {
  double total = 0.0;  // chips
  // Best-response value of each player against the other's strategy; these
  // sum to `total`.
  std::array<double, kNumPlayers> per_player{};
  double mbbg = 0.0;  // total / big_blind * 1000
};

Exploitability exploitability(const Game& game, const SuccessorIndex& successors,
                              const StrategyProfile& profile);
Exploitability exploitability(const Game& game, const StrategyProfile& profile);

// |u_p(sigma'_p, sigma_{-p}) - u_p(sigma) - sum_I sum_a pi'_p(I) (v(I,a) - v(I)) sigma'(I,a)|.
// Zero up to rounding for any pair of strategies.
double payoff_difference_identity_check(const Game& game, const StrategyProfile& profile,
                                        const StrategyProfile& alt_strategy, Player player);

// Copy of `profile` with player p's infosets taken from `strategy`.
StrategyProfile combine(const Game& game, const StrategyProfile& profile,
                        const StrategyProfile& strategy, Player player);

}  // namespace recfr

#endif  // RECFR_TREE_VALUES_HPP_
