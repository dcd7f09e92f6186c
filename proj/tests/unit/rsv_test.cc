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

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "recfr/solver.hpp"

namespace recfr {
namespace {

using ::testing::DoubleNear;
using ::testing::ElementsAre;

// lambda(I) = coef * pi_{-p}(I) * delta(I)^2 * |A(I)| * t, computed from scratch.
std::vector<double> corollary_lambda(const Game& game, const StrategyProfile& average, double coef,
                                     double t) {
  const ReachTable reaches = compute_reaches(game, average);
  std::vector<double> lambda(game.num_infosets());
  for (int i = 0; i < game.num_infosets(); ++i) {
    const Infoset& info = game.infoset(i);
    double others = 0.0;
    for (int h : info.histories) others += reaches.others(info.player, h);
    lambda[i] = coef * others * info.delta * info.delta * info.num_actions() * t;
  }
  return lambda;
}

TEST(RegretMatchingTest, PositivePartsAreNormalized) {
  EXPECT_THAT(regret_matching(std::vector<double>{2, 1, -1}),
              ElementsAre(DoubleNear(2.0 / 3.0, 1e-15), DoubleNear(1.0 / 3.0, 1e-15), 0.0));
}

TEST(RegretMatchingTest, AllNonPositivePicksTheLargest) {
  EXPECT_THAT(regret_matching(std::vector<double>{-3, -1, -2}), ElementsAre(0.0, 1.0, 0.0));
  EXPECT_THAT(regret_matching(std::vector<double>{0, 0}), ElementsAre(1.0, 0.0));
  EXPECT_THAT(regret_matching(std::vector<double>{-2, -1, -1}), ElementsAre(0.0, 1.0, 0.0));
}

TEST(RegretMatchingTest, RejectsNaN) {
  EXPECT_THROW(regret_matching(std::vector<double>{1.0, std::nan("")}), Error);
  EXPECT_THROW(regret_matching(std::vector<double>{}), Error);
}

TEST(RegretMatchingTest, ScaleInvariant) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> normal;
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<double> r(2 + rep % 6);
    for (double& x : r) x = normal(rng);
    const auto base = regret_matching(r);
    double sum = 0.0;
    const bool any_positive = std::any_of(r.begin(), r.end(), [](double x) { return x > 0; });
    for (std::size_t a = 0; a < r.size(); ++a) {
      EXPECT_GE(base[a], 0.0);
      sum += base[a];
      if (any_positive && r[a] < 0) {
        EXPECT_EQ(base[a], 0.0);
      }
    }
    EXPECT_NEAR(sum, 1.0, 1e-12);
    const auto argmax = std::max_element(r.begin(), r.end()) - r.begin();
    EXPECT_EQ(base[argmax], *std::max_element(base.begin(), base.end()));
    for (double c : {1e-6, 1.0, 1e6}) {
      std::vector<double> scaled = r;
      for (double& x : scaled) x *= c;
      const auto out = regret_matching(scaled);
      for (std::size_t a = 0; a < r.size(); ++a) EXPECT_NEAR(out[a], base[a], 1e-12);
    }
  }
}

TEST(SolveRsvScalarTest, ZeroBudgetGivesTheMaximum) {
  EXPECT_EQ(solve_rsv_scalar(std::vector<double>{-0.7, 0, 1}, 0.0), 1.0);
}

TEST(SolveRsvScalarTest, UnitBudgetExample) {
  // (1 - 0)^2 = 1 with the other entries inactive.
  EXPECT_NEAR(solve_rsv_scalar(std::vector<double>{-0.7, 0, 1}, 1.0), 0.0, 1e-12);
}

TEST(SolveRsvScalarTest, MatchesBisectionOnExampleVector) {
  const std::vector<double> values{-0.7, 0, 1};
  for (double lambda : {0.01, 0.5, 2.0, 5.0}) {
    const double x = solve_rsv_scalar(values, lambda);
    EXPECT_NEAR(x, testing::bisection_rsv(values, lambda), 1e-10) << lambda;
    EXPECT_NEAR(rsv_gap(values, x), lambda, 1e-9 * std::max(1.0, lambda));
    EXPECT_LE(x, 1.0);
  }
}

TEST(SolveRsvScalarTest, MatchesBisectionOnRandomInstances) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int rep = 0; rep < 1000; ++rep) {
    std::vector<double> values(2 + rep % 7);
    for (double& v : values) v = 4.0 * unit(rng) - 2.0;
    if (rep % 5 == 0) values[1] = values[0];  // ties
    const double delta = 4.0;
    const double lambda = std::exp(std::log(1e-8) + unit(rng) * std::log(10 * delta * delta / 1e-8));
    const double x = solve_rsv_scalar(values, lambda);
    EXPECT_NEAR(x, testing::bisection_rsv(values, lambda), 1e-10);
    EXPECT_NEAR(testing::gap(values, x), lambda, 1e-9 * std::max(1.0, lambda));
  }
}

TEST(SolveRsvScalarTest, GapIsDecreasingBelowTheMaximum) {
  const std::vector<double> values{0.3, -1.2, 2.0, 0.0};
  double previous = std::numeric_limits<double>::infinity();
  for (double x = -5.0; x <= 2.0; x += 0.05) {
    const double g = rsv_gap(values, x);
    EXPECT_LT(g, previous);
    previous = g;
  }
  EXPECT_EQ(rsv_gap(values, 2.0), 0.0);
}

TEST(SolveRsvScalarTest, SingleValue) {
  EXPECT_NEAR(solve_rsv_scalar(std::vector<double>{3.0}, 4.0), 1.0, 1e-12);
}

TEST(SolveRsvScalarTest, RejectsBadInput) {
  EXPECT_THROW(solve_rsv_scalar(std::vector<double>{}, 1.0), Error);
  EXPECT_THROW(solve_rsv_scalar(std::vector<double>{1.0, std::nan("")}, 1.0), Error);
  EXPECT_THROW(solve_rsv_scalar(std::vector<double>{1.0}, -1.0), Error);
  EXPECT_THROW(solve_rsv_scalar(std::vector<double>{1.0}, std::nan("")), Error);
}

TEST(RsvTableTest, ZeroBudgetGivesBestResponseValue) {
  std::mt19937_64 rng(3);
  for (const char* name : {"kuhn", "leduc"}) {
    const auto game = build_game(name);
    const SuccessorIndex succ(*game);
    const std::vector<double> zero(game->num_infosets(), 0.0);
    for (int rep = 0; rep < 3; ++rep) {
      const StrategyProfile avg = testing::random_profile(*game, rng, 0.2);
      for (Player p = 0; p < kNumPlayers; ++p) {
        const RsvTable rsv = compute_rsv_table(*game, succ, avg, zero, p);
        EXPECT_NEAR(rsv.root, best_response(*game, succ, avg, p).value, 1e-12);
        const ActionTable r = substitute_regrets(*game, rsv, 7.0);
        for (int i : game->infosets_of(p)) {
          EXPECT_EQ(*std::max_element(r[i].begin(), r[i].end()), 0.0);
        }
      }
    }
  }
}

TEST(RsvTableTest, SingleActionGameIgnoresTheBudget) {
  const auto game = build_game("matrix-test", {{"rows", "1"}, {"cols", "1"}, {"outcomes", "2"},
                                               {"payoffs", "1,-3"}});
  const SuccessorIndex succ(*game);
  const StrategyProfile uniform = StrategyProfile::uniform(*game);
  for (double lambda : {0.0, 0.5, 100.0}) {
    const std::vector<double> budget(game->num_infosets(), lambda);
    for (Player p = 0; p < kNumPlayers; ++p) {
      const RsvTable rsv = compute_rsv_table(*game, succ, uniform, budget, p, 3.0);
      EXPECT_NEAR(rsv.root, expected_payoff(*game, uniform, p), 1e-12);
    }
  }
}

TEST(RsvTableTest, CorollaryBudgetsAreMetAtEveryInfoset) {
  const auto game = build_game("kuhn");
  const SuccessorIndex succ(*game);
  std::mt19937_64 rng(4);
  for (int rep = 0; rep < 20; ++rep) {
    const StrategyProfile avg = testing::random_profile(*game, rng, 0.2);
    const double t = 1 + rep * 13;
    const auto lambda = corollary_lambda(*game, avg, rep % 2 ? 1.0 : 1e-3, t);
    const auto tables = compute_rsv_tables(*game, succ, avg, lambda, t);
    for (Player p = 0; p < kNumPlayers; ++p) {
      const RsvTable& rsv = tables[p];
      const ActionTable r = substitute_regrets(*game, rsv, t);
      for (int i : game->infosets_of(p)) {
        const auto v = rsv.action_values[i];
        EXPECT_LE(rsv.infoset_values[i], *std::max_element(v.begin(), v.end()));
        double scaled = 0.0;
        for (double x : v) scaled += std::pow(std::max(0.0, t * x - t * rsv.infoset_values[i]), 2);
        EXPECT_NEAR(scaled, lambda[i], 1e-9 * std::max(1.0, lambda[i])) << game->infoset(i).key;
        EXPECT_NEAR(testing::gap(r[i], 0.0), lambda[i], 1e-9 * std::max(1.0, lambda[i]));
      }
    }
  }
}

TEST(RsvTableTest, RecursionMatchesTerminalsPlusSuccessorValues) {
  // v'(I, a) rebuilt by hand: pi_{-p}-weighted terminals reached right after
  // (I, a) plus v'(I') of every next own infoset.
  const auto game = build_game("kuhn");
  const SuccessorIndex succ(*game);
  std::mt19937_64 rng(5);
  const StrategyProfile avg = testing::random_profile(*game, rng);
  const ReachTable reaches = compute_reaches(*game, avg);
  const auto lambda = corollary_lambda(*game, avg, 0.1, 1.0);
  for (Player p = 0; p < kNumPlayers; ++p) {
    const RsvTable rsv = compute_rsv_table(*game, succ, avg, lambda, p);
    for (int i : game->infosets_of(p)) {
      for (int a = 0; a < game->infoset(i).num_actions(); ++a) {
        double expected = 0.0;
        std::vector<int> seen;
        for (int h : game->infoset(i).histories) {
          // Walk down from h.a until the player's next decision or a terminal.
          std::vector<int> stack{game->child(h, a)};
          while (!stack.empty()) {
            const int cur = stack.back();
            stack.pop_back();
            const History& node = game->history(cur);
            if (node.is_terminal()) {
              expected += reaches.others(p, cur) * game->payoff(cur, p);
            } else if (node.is_player() && node.player() == p) {
              if (std::find(seen.begin(), seen.end(), node.infoset) == seen.end()) {
                seen.push_back(node.infoset);
                expected += rsv.infoset_values[node.infoset];
              }
            } else {
              for (int c = 0; c < node.num_children; ++c) stack.push_back(node.first_child + c);
            }
          }
        }
        EXPECT_NEAR(rsv.action_values[i][a], expected, 1e-12);
      }
    }
  }
}

TEST(RsvTableTest, ArbitraryInfosetValuesSatisfyPayoffDecomposition) {
  std::mt19937_64 rng(6);
  std::normal_distribution<double> normal;
  for (const char* name : {"kuhn", "leduc"}) {
    const auto game = build_game(name);
    const SuccessorIndex succ(*game);
    for (int rep = 0; rep < 5; ++rep) {
      const StrategyProfile sigma = testing::random_profile(*game, rng, 0.2);
      const StrategyProfile alt = testing::random_profile(*game, rng, 0.2);
      std::vector<double> values(game->num_infosets());
      for (double& v : values) v = normal(rng);
      for (Player p = 0; p < kNumPlayers; ++p) {
        EXPECT_LT(testing::rsv_decomposition_residual(*game, succ, sigma, alt, values, p), 1e-9);
      }
    }
  }
}

TEST(SubstituteRegretsTest, FirstIterationGivesRawGaps) {
  const auto game = build_game("kuhn");
  const SuccessorIndex succ(*game);
  const StrategyProfile uniform = StrategyProfile::uniform(*game);
  const auto lambda = corollary_lambda(*game, uniform, 1.0, 1.0);
  const RsvTable rsv = compute_rsv_table(*game, succ, uniform, lambda, kPlayer2);
  const ActionTable r = substitute_regrets(*game, rsv, 1.0);
  for (int i : game->infosets_of(kPlayer2)) {
    for (int a = 0; a < 2; ++a) {
      EXPECT_EQ(r[i][a], rsv.action_values[i][a] - rsv.infoset_values[i]);
    }
  }
}

TEST(SubstituteRegretsTest, CfrEquivalentBudgetsReproduceCfr) {
  // With lambda(I) = sum_a (R(I, a))_+^2 from vanilla CFR, regret matching on
  // the substitute regrets gives CFR's next strategy.
  for (const char* name : {"kuhn", "leduc"}) {
    const auto game = build_game(name);
    const auto succ = build_successors(*game);
    CfrSolver cfr(game, succ);
    for (int t = 1; t <= 30; ++t) {
      cfr.iterate();
      const StrategyProfile avg = cfr.average();
      const ActionTable& regrets = cfr.cumulative_regrets();
      std::vector<double> lambda(game->num_infosets());
      for (int i = 0; i < game->num_infosets(); ++i) lambda[i] = testing::gap(regrets[i], 0.0);
      const auto tables = compute_rsv_tables(*game, *succ, avg, lambda, t);
      for (Player p = 0; p < kNumPlayers; ++p) {
        const ActionTable r = substitute_regrets(*game, tables[p], t);
        for (int i : game->infosets_of(p)) {
          const auto expected = regret_matching(regrets[i]);
          const auto actual = regret_matching(r[i]);
          for (std::size_t a = 0; a < expected.size(); ++a) {
            EXPECT_NEAR(actual[a], expected[a], 1e-9) << name << " t=" << t;
          }
        }
      }
    }
  }
}

TEST(NormalizeTest, UndoesTheReachWeighting) {
  const auto game = build_game("kuhn");
  const SuccessorIndex succ(*game);
  std::mt19937_64 rng(7);
  const StrategyProfile avg = testing::random_profile(*game, rng, 0.4);
  const ReachTable reaches = compute_reaches(*game, avg);
  const auto lambda = corollary_lambda(*game, avg, 0.01, 5.0);
  for (Player p = 0; p < kNumPlayers; ++p) {
    const RsvTable rsv = compute_rsv_table(*game, succ, reaches, lambda, p, 5.0);
    const NormalizedRsv u = normalize(*game, rsv, reaches);
    for (int i : game->infosets_of(p)) {
      const double others = reaches.infoset_others(*game, i);
      ASSERT_EQ(u.defined[i] != 0, others > 0.0);
      if (others == 0.0) continue;
      for (int a = 0; a < 2; ++a) {
        EXPECT_NEAR(u.action_values[i][a] * others, rsv.action_values[i][a], 1e-10);
      }
    }
  }
}

TEST(ExpectationIdentityTest, KuhnUniformAverage) {
  const auto game = build_game("kuhn");
  const SuccessorIndex succ(*game);
  const StrategyProfile avg = StrategyProfile::uniform(*game);
  const ReachTable reaches = compute_reaches(*game, avg);
  for (double coef : {0.0, 1e-3, 1.0}) {
    const auto lambda = corollary_lambda(*game, avg, coef, 10.0);
    for (Player p = 0; p < kNumPlayers; ++p) {
      const RsvTable rsv = compute_rsv_table(*game, succ, reaches, lambda, p, 10.0);
      const ExpectationCheck check =
          expectation_identity_check(*game, succ, avg, normalize(*game, rsv, reaches));
      EXPECT_LT(check.max_residual, 1e-10);
      EXPECT_TRUE(check.skipped.empty());
    }
  }
}

TEST(ExpectationIdentityTest, MatrixGameIsExact) {
  const auto game = build_game("matrix-test", {{"rows", "3"}, {"cols", "2"}, {"outcomes", "2"}});
  const SuccessorIndex succ(*game);
  const StrategyProfile avg = StrategyProfile::uniform(*game);
  const ReachTable reaches = compute_reaches(*game, avg);
  const std::vector<double> lambda(game->num_infosets(), 0.3);
  for (Player p = 0; p < kNumPlayers; ++p) {
    const RsvTable rsv = compute_rsv_table(*game, succ, reaches, lambda, p);
    EXPECT_LT(expectation_identity_check(*game, succ, avg, normalize(*game, rsv, reaches))
                  .max_residual,
              1e-15);
  }
}

TEST(ExpectationIdentityTest, LeducRandomAverageReportsUnreachedInfosets) {
  const auto game = build_game("leduc");
  const SuccessorIndex succ(*game);
  std::mt19937_64 rng(8);
  const StrategyProfile avg = testing::random_profile(*game, rng, 0.3);
  const ReachTable reaches = compute_reaches(*game, avg);
  const auto lambda = corollary_lambda(*game, avg, 1e-2, 20.0);
  std::size_t skipped = 0;
  for (Player p = 0; p < kNumPlayers; ++p) {
    const RsvTable rsv = compute_rsv_table(*game, succ, reaches, lambda, p, 20.0);
    const ExpectationCheck check =
        expectation_identity_check(*game, succ, avg, normalize(*game, rsv, reaches));
    EXPECT_LT(check.max_residual, 1e-9);
    for (int i : check.skipped) EXPECT_EQ(reaches.infoset_others(*game, i), 0.0);
    skipped += check.skipped.size();
  }
  std::size_t unreached = 0;
  for (int i = 0; i < game->num_infosets(); ++i) unreached += reaches.infoset_others(*game, i) == 0.0;
  EXPECT_EQ(skipped, unreached);
  EXPECT_GT(unreached, 0u);
}

TEST(TransitionProbabilityTest, MultipliesChanceAndOpponentEdges) {
  const auto game = build_game("kuhn");
  const StrategyProfile uniform = StrategyProfile::uniform(*game);
  // From the root to a P1 decision: two chance edges, 1/3 * 1/2.
  const int h = game->history(game->history(0).first_child).first_child;
  ASSERT_TRUE(game->history(h).is_player());
  EXPECT_NEAR(transition_probability(*game, uniform, kPlayer1, 0, h), 1.0 / 6.0, 1e-15);
  // P1's own edge does not count for P1, the opponent's does.
  const int after_pass = game->child(h, 0);
  const int pass_bet = game->child(after_pass, 1);
  EXPECT_NEAR(transition_probability(*game, uniform, kPlayer1, h, pass_bet), 0.5, 1e-15);
  EXPECT_NEAR(transition_probability(*game, uniform, kPlayer2, h, pass_bet), 0.5, 1e-15);
}

}  // namespace
}  // namespace recfr
