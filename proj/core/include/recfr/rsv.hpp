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

// Recursive substitute values (RSVs).
//
// For a player p and an average strategy, v'(I, a) follows the counterfactual
// recursion: opponent-and-chance weighted terminal payoffs reached directly
// after (I, a) plus v'(I') of every next own infoset I'. The infoset value
// v'(I) is then chosen per infoset so that
//
//     sum_a (t v'(I, a) - t v'(I))_+^2 = lambda(I),
//
// with v'(I) = max_a v'(I, a) when lambda(I) = 0. Substitute regrets are
// R'(I, a) = t (v'(I, a) - v'(I)).

#ifndef RECFR_RSV_HPP_
#define RECFR_RSV_HPP_

#include <array>
#include <span>
#include <vector>

#include "recfr/game.hpp"
#include "recfr/tree_values.hpp"

namespace recfr {

// Probabilities proportional to the positive parts. If no entry is positive
// the largest entry gets probability 1 (lowest index on ties). Throws Error on
// NaN input.
void regret_matching(std::span<const double> regrets, std::span<double> out);
std::vector<double> regret_matching(std::span<const double> regrets);

// The unique x <= max(values) with sum_i (values_i - x)_+^2 = lambda, or
// max(values) when lambda = 0. Sorts the values and solves the quadratic on
// each interval between consecutive values from the top down; bisection is
// the fallback if rounding rejects every interval root.
double solve_rsv_scalar(std::span<const double> values, double lambda);

// sum_i (values_i - x)_+^2
double rsv_gap(std::span<const double> values, double x);

struct RsvTable {
  Player player = kPlayer1;
  double scale = 1.0;                  // the iteration count t used in the constraint
  ActionTable action_values;           // v'(I, a)
  std::vector<double> infoset_values;  // v'(I)
  double root = 0.0;                   // v'_p
};

// One player's RSVs under `average` with per-infoset budgets `lambda`
// (indexed by global infoset id). Infosets with a single action keep
// v'(I) = v'(I, a): such infosets never accumulate regret.
RsvTable compute_rsv_table(const Game& game, const SuccessorIndex& successors,
                           const StrategyProfile& average, std::span<const double> lambda,
                           Player player, double scale = 1.0);
RsvTable compute_rsv_table(const Game& game, const SuccessorIndex& successors,
                           const ReachTable& average_reaches, std::span<const double> lambda,
                           Player player, double scale = 1.0);

std::array<RsvTable, kNumPlayers> compute_rsv_tables(const Game& game,
                                                     const SuccessorIndex& successors,
                                                     const StrategyProfile& average,
                                                     std::span<const double> lambda,
                                                     double scale = 1.0);

// v'(I, a) rebuilt by the recursion from arbitrary infoset values v'(I).
// Returns the resulting root value and fills `action_values`.
double rsv_recursion(const Game& game, const SuccessorIndex& successors,
                     const ReachTable& reaches, std::span<const double> infoset_values,
                     Player player, ActionTable& action_values);

// R'(I, a) = t (v'(I, a) - v'(I)) on the table's player's infosets.
ActionTable substitute_regrets(const Game& game, const RsvTable& rsv, double t);

// Normalized RSVs u' = v' / pi_{-p}(I). Undefined (and flagged) where the
// opponent-and-chance reach of the infoset is zero.
struct NormalizedRsv {
  Player player = kPlayer1;
  ActionTable action_values;           // u'(I, a)
  std::vector<double> infoset_values;  // u'(I)
  std::vector<char> defined;
  std::vector<double> others_reach;    // pi_{-p}(I)
  double root = 0.0;
};

NormalizedRsv normalize(const Game& game, const RsvTable& rsv, const ReachTable& reaches);

struct ExpectationCheck {
  double max_residual = 0.0;
  std::vector<int> skipped;  // infosets with zero opponent-and-chance reach
};

// Checks u'(I, a) = E_{h ~ I, h' ~ Succ_p(h.a)}[1{h' in Z} u_p(h') +
// 1{h' not in Z} u'(I(h'))] by enumerating histories and transitions.
ExpectationCheck expectation_identity_check(const Game& game, const SuccessorIndex& successors,
                                            const StrategyProfile& average,
                                            const NormalizedRsv& rsv);

// Probability that chance and the opponent of p move from `from` to
// `to` (a descendant), computed along the path.
double transition_probability(const Game& game, const StrategyProfile& profile, Player player,
                              int from, int to);

}  // namespace recfr

#endif  // RECFR_RSV_HPP_
