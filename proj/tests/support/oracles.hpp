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

// Independent reference computations shared by the unit and acceptance
// tests. Nothing here calls the code under test for the quantity it checks.

#ifndef RECFR_TESTS_ORACLES_HPP_
#define RECFR_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "recfr/game.hpp"
#include "recfr/rsv.hpp"
#include "recfr/tree_values.hpp"

namespace recfr::testing {

// Random profile; with `zero_prob` > 0 some actions get probability 0 (at
// least one action per infoset stays positive).
inline StrategyProfile random_profile(const Game& game, std::mt19937_64& rng,
                                      double zero_prob = 0.0) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  StrategyProfile out(game);
  for (int i = 0; i < game.num_infosets(); ++i) {
    auto probs = out[i];
    double sum = 0.0;
    for (double& p : probs) {
      p = unit(rng) < zero_prob ? 0.0 : unit(rng) + 1e-3;
      sum += p;
    }
    if (sum == 0.0) {
      probs[rng() % probs.size()] = 1.0;
      sum = 1.0;
    }
    for (double& p : probs) p /= sum;
  }
  return out;
}

inline StrategyProfile random_pure_profile(const Game& game, std::mt19937_64& rng) {
  StrategyProfile out(game);
  for (int i = 0; i < game.num_infosets(); ++i) {
    auto probs = out[i];
    probs[rng() % probs.size()] = 1.0;
  }
  return out;
}

// Expected payoff of player p by summing pi(z) u_p(z) over root-to-leaf paths,
// walking each terminal's ancestors.
inline double path_expected_payoff(const Game& game, const StrategyProfile& profile, Player p) {
  double total = 0.0;
  for (int z : game.terminals()) {
    double prob = 1.0;
    for (int cur = z; cur > 0; cur = game.history(cur).parent) {
      const History& parent = game.history(game.history(cur).parent);
      prob *= parent.is_chance() ? game.history(cur).chance_prob
                                 : profile[parent.infoset][game.history(cur).action];
    }
    total += prob * game.payoff(z, p);
  }
  return total;
}

// Calls `visit` with `base` modified to every pure strategy of player p.
inline void for_each_pure_strategy(const Game& game, const StrategyProfile& base, Player p,
                                   const std::function<void(const StrategyProfile&)>& visit) {
  const auto ids = game.infosets_of(p);
  std::vector<int> choice(ids.size(), 0);
  StrategyProfile pure = base;
  while (true) {
    for (std::size_t k = 0; k < ids.size(); ++k) {
      auto probs = pure[ids[k]];
      std::fill(probs.begin(), probs.end(), 0.0);
      probs[choice[k]] = 1.0;
    }
    visit(pure);
    std::size_t k = 0;
    for (; k < ids.size(); ++k) {
      if (++choice[k] < game.infoset(ids[k]).num_actions()) break;
      choice[k] = 0;
    }
    if (k == ids.size()) return;
  }
}

// max over pure strategies of player p of u_p(pure, profile_{-p}).
inline double brute_force_best_response_value(const Game& game, const StrategyProfile& profile,
                                              Player p) {
  double best = -INFINITY;
  for_each_pure_strategy(game, profile, p, [&](const StrategyProfile& pure) {
    best = std::max(best, path_expected_payoff(game, pure, p));
  });
  return best;
}

// max over pure strategies of player p of sum_t u_p(pure, opponents[t]_{-p}).
inline double brute_force_best_total(const Game& game,
                                     const std::vector<StrategyProfile>& opponents, Player p) {
  double best = -INFINITY;
  for_each_pure_strategy(game, opponents.front(), p, [&](const StrategyProfile& pure) {
    double total = 0.0;
    for (const StrategyProfile& opp : opponents) {
      total += path_expected_payoff(game, combine(game, opp, pure, p), p);
    }
    best = std::max(best, total);
  });
  return best;
}

inline double gap(std::span<const double> values, double x) {
  double s = 0.0;
  for (double v : values) s += v > x ? (v - x) * (v - x) : 0.0;
  return s;
}

// Root of sum_i (v_i - x)_+^2 = lambda by plain bisection on
// [max - sqrt(lambda) - 1, max].
inline double bisection_rsv(std::span<const double> values, double lambda) {
  const double top = *std::max_element(values.begin(), values.end());
  if (lambda == 0.0) return top;
  double lo = top - std::sqrt(lambda) - 1.0;
  double hi = top;
  for (int i = 0; i < 400; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (gap(values, mid) > lambda ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// |u_p(sigma'_p, sigma_{-p}) - v'_p - sum_I pi'_p(I) sum_a (v'(I,a) - v'(I)) sigma'(I,a)|
// for arbitrary per-infoset scalars v'(I), with v'(I, a) built by the RSV
// recursion under sigma.
inline double rsv_decomposition_residual(const Game& game, const SuccessorIndex& successors,
                              const StrategyProfile& sigma, const StrategyProfile& alt,
                              std::span<const double> infoset_values, Player p) {
  const ReachTable reaches = compute_reaches(game, sigma);
  ActionTable action_values;
  const double root = rsv_recursion(game, successors, reaches, infoset_values, p, action_values);
  const StrategyProfile mixed = combine(game, sigma, alt, p);
  const ReachTable alt_reach = compute_reaches(game, mixed);
  double decomposition = 0.0;
  for (int i : game.infosets_of(p)) {
    const double own = alt_reach.infoset_own(game, i);
    auto v = action_values[i];
    for (std::size_t a = 0; a < v.size(); ++a) {
      decomposition += own * (v[a] - infoset_values[i]) * alt[i][a];
    }
  }
  return std::abs(path_expected_payoff(game, mixed, p) - root - decomposition);
}

}  // namespace recfr::testing

#endif  // RECFR_TESTS_ORACLES_HPP_
