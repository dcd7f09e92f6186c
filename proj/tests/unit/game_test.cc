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

#include "recfr/game.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <utility>

#include "oracles.hpp"
#include "recfr/tree_values.hpp"

namespace recfr {
namespace {

// Own (infoset, action) pairs on the path to h, for the given player.
std::vector<std::pair<int, int>> own_sequence(const Game& game, int h, Player p) {
  std::vector<std::pair<int, int>> seq;
  for (int cur = h; cur > 0; cur = game.history(cur).parent) {
    const History& parent = game.history(game.history(cur).parent);
    if (parent.is_player() && parent.player() == p) {
      seq.emplace_back(parent.infoset, game.history(cur).action);
    }
  }
  std::reverse(seq.begin(), seq.end());
  return seq;
}

void check_invariants(const Game& game) {
  for (int h = 0; h < game.num_histories(); ++h) {
    const History& node = game.history(h);
    if (node.is_chance()) {
      double sum = 0.0;
      for (int c = 0; c < node.num_children; ++c) {
        sum += game.history(node.first_child + c).chance_prob;
      }
      EXPECT_NEAR(sum, 1.0, 1e-12) << game.sequence(h);
    }
    if (node.is_player()) {
      ASSERT_GE(node.infoset, 0);
      const Infoset& info = game.infoset(node.infoset);
      EXPECT_EQ(info.player, node.player());
      EXPECT_EQ(info.num_actions(), node.num_children);
      EXPECT_EQ(std::count(info.histories.begin(), info.histories.end(), h), 1);
    } else {
      EXPECT_EQ(node.infoset, -1);
    }
  }
  for (int i = 0; i < game.num_infosets(); ++i) {
    const Infoset& info = game.infoset(i);
    const auto expected = own_sequence(game, info.histories.front(), info.player);
    for (int h : info.histories) {
      EXPECT_EQ(own_sequence(game, h, info.player), expected) << info.key;
      for (int a = 0; a < info.num_actions(); ++a) {
        EXPECT_EQ(game.history(game.child(h, a)).label, info.actions[a]);
      }
    }
    EXPECT_GE(info.delta, 0.0);
    EXPECT_LE(info.delta, game.global_delta());
  }
}

// Payoff range below an infoset, by walking every terminal's ancestors.
double brute_force_delta(const Game& game, int infoset) {
  const Infoset& info = game.infoset(infoset);
  double lo = INFINITY;
  double hi = -INFINITY;
  for (int z : game.terminals()) {
    for (int cur = z; cur >= 0; cur = game.history(cur).parent) {
      if (game.history(cur).infoset == infoset && game.history(cur).is_player()) {
        lo = std::min(lo, game.payoff(z, info.player));
        hi = std::max(hi, game.payoff(z, info.player));
        break;
      }
    }
  }
  return hi - lo;
}

TEST(KuhnTest, HasTwelveInfosetsWithTwoActions) {
  const auto game = build_game("kuhn");
  EXPECT_EQ(game->num_infosets(), 12);
  EXPECT_EQ(game->infosets_of(kPlayer1).size(), 6u);
  EXPECT_EQ(game->infosets_of(kPlayer2).size(), 6u);
  for (const Infoset& info : game->infosets()) EXPECT_EQ(info.num_actions(), 2);
  EXPECT_EQ(game->num_histories(), 58);
  EXPECT_EQ(game->terminals().size(), 30u);
  EXPECT_DOUBLE_EQ(game->big_blind(), 1.0);
}

TEST(KuhnTest, SatisfiesInvariants) { check_invariants(*build_game("kuhn")); }

TEST(KuhnTest, PayoffsFollowTheRules) {
  const auto game = build_game("kuhn");
  std::map<std::string, double> payoffs;
  for (int z : game->terminals()) payoffs[game->sequence(z)] = game->payoff(z, kPlayer1);
  // Card labels are J/Q/K; after the deal the betting is p(ass)/b(et).
  int checked = 0;
  for (const auto& [seq, value] : payoffs) {
    const bool p1_high = seq.find("K/") == 0 || (seq.find("Q/J/") == 0);
    if (seq.size() >= 2 && seq.substr(seq.size() - 2) == "pp") {
      EXPECT_DOUBLE_EQ(std::abs(value), 1.0) << seq;
      EXPECT_EQ(value > 0, p1_high) << seq;
      ++checked;
    } else if (seq.substr(seq.size() - 2) == "bp") {
      // The player who passed after a bet folds.
      EXPECT_DOUBLE_EQ(std::abs(value), 1.0) << seq;
      ++checked;
    } else if (seq.substr(seq.size() - 2) == "bb") {
      EXPECT_DOUBLE_EQ(std::abs(value), 2.0) << seq;
      EXPECT_EQ(value > 0, p1_high) << seq;
      ++checked;
    }
  }
  EXPECT_EQ(checked, 30);
}

TEST(KuhnTest, DeltaMatchesTerminalRange) {
  const auto game = build_game("kuhn");
  for (int i = 0; i < game->num_infosets(); ++i) {
    EXPECT_DOUBLE_EQ(game->infoset(i).delta, brute_force_delta(*game, i)) << game->infoset(i).key;
  }
  EXPECT_DOUBLE_EQ(game->global_delta(), 4.0);
}

TEST(KuhnTest, ZeroSumAtEveryTerminal) {
  const auto game = build_game("kuhn");
  for (int z : game->terminals()) EXPECT_EQ(game->payoff(z, kPlayer1), -game->payoff(z, kPlayer2));
}

TEST(KuhnTest, MoreCardsGrowTheGame) {
  const auto game = build_game("kuhn", {{"cards", "4"}});
  EXPECT_EQ(game->num_infosets(), 16);
  check_invariants(*game);
}

TEST(LeducTest, HasStandardSize) {
  const auto game = build_game("leduc");
  EXPECT_EQ(game->num_infosets(), 936);
  EXPECT_EQ(game->infosets_of(kPlayer1).size(), 468u);
  EXPECT_DOUBLE_EQ(game->big_blind(), 2.0);
}

TEST(LeducTest, SatisfiesInvariants) { check_invariants(*build_game("leduc")); }

TEST(LeducTest, BettingRules) {
  const auto game = build_game("leduc");
  const History& root = game->history(0);
  ASSERT_TRUE(root.is_chance());
  EXPECT_EQ(root.num_children, 6);
  for (const Infoset& info : game->infosets()) {
    // Keys look like "P1:Js:cc/Qh:r": player, card, round one, board, round two.
    const std::string betting = info.key.substr(info.key.find(':', 3) + 1);
    const auto slash = betting.find('/');
    const std::string round =
        slash == std::string::npos ? betting : betting.substr(betting.find(':', slash) + 1);
    const auto raises = std::count(round.begin(), round.end(), 'r');
    // Folding is legal only when facing a raise; at most two raises per round.
    const bool facing = raises > 0 && round.back() == 'r';
    EXPECT_EQ(info.actions.front() == "f", facing) << info.key;
    EXPECT_EQ(info.actions.back() == "r", raises < 2) << info.key;
    EXPECT_LE(raises, 2);
  }
  // Largest pot: both players put in 1 + 2 + 2 + 4 + 4.
  EXPECT_DOUBLE_EQ(game->max_payoff(kPlayer1), 13.0);
  EXPECT_DOUBLE_EQ(game->min_payoff(kPlayer1), -13.0);
}

TEST(LeducTest, ShowdownPayoffs) {
  const auto game = build_game("leduc");
  int checked = 0;
  for (int z : game->terminals()) {
    const std::string seq = game->sequence(z);
    // P1 king, P2 queen, public jack, two check rounds.
    if (seq == "Ks/Qh/ccJs/cc") {
      EXPECT_DOUBLE_EQ(game->payoff(z, kPlayer1), 1.0);
      ++checked;
    }
    if (seq == "Ks/Qh/ccQs/cc") {
      EXPECT_DOUBLE_EQ(game->payoff(z, kPlayer1), -1.0);  // pair of queens wins
      ++checked;
    }
    if (seq == "Ks/Kh/rcJs/rc") {
      EXPECT_DOUBLE_EQ(game->payoff(z, kPlayer1), 0.0);  // split pot
      ++checked;
    }
    if (seq == "Js/Qh/rrcKs/rrc") {
      EXPECT_DOUBLE_EQ(game->payoff(z, kPlayer1), -13.0);
      ++checked;
    }
  }
  EXPECT_EQ(checked, 4);
}

TEST(MatrixTest, SingleActionGame) {
  const auto game =
      build_game("matrix-test", {{"rows", "1"}, {"cols", "1"}, {"outcomes", "3"},
                                 {"payoffs", "1.5,-2,0.25"}});
  EXPECT_EQ(game->terminals().size(), 3u);
  check_invariants(*game);
  const StrategyProfile only = StrategyProfile::uniform(*game);
  EXPECT_NEAR(exploitability(*game, only).total, 0.0, 1e-12);
}

TEST(MatrixTest, SeededPayoffsAreReproducibleAndInRange) {
  const GameParams params{{"rows", "3"}, {"cols", "2"}, {"outcomes", "2"}, {"payoff-seed", "7"}};
  const auto a = build_game("matrix-test", params);
  const auto b = build_game("matrix-test", params);
  ASSERT_EQ(a->terminals().size(), 12u);
  for (int z : a->terminals()) {
    EXPECT_EQ(a->payoff(z, kPlayer1), b->payoff(z, kPlayer1));
    EXPECT_GE(a->payoff(z, kPlayer1), -3.0);
    EXPECT_LE(a->payoff(z, kPlayer1), 3.0);
  }
  // Player 2 does not observe the chance outcome.
  EXPECT_EQ(a->infosets_of(kPlayer2).size(), 1u);
  EXPECT_EQ(a->infosets_of(kPlayer1).size(), 2u);
}

TEST(BuildGameTest, RejectsBadInput) {
  EXPECT_THROW(build_game("chess"), Error);
  EXPECT_THROW(build_game("kuhn", {{"cards", "0"}}), Error);
  EXPECT_THROW(build_game("kuhn", {{"cards", "x"}}), Error);
  EXPECT_THROW(build_game("kuhn", {{"ranks", "3"}}), Error);
  EXPECT_THROW(build_game("leduc", {{"ranks", "1"}}), Error);
  EXPECT_THROW(build_game("matrix-test", {{"rows", "0"}}), Error);
  EXPECT_THROW(build_game("matrix-test", {{"payoffs", "1,2"}}), Error);
}

TEST(GameTest, DeterministicProfilesReachOneTerminalPerChanceOutcome) {
  std::mt19937_64 rng(3);
  for (const char* name : {"kuhn", "leduc"}) {
    const auto game = build_game(name);
    for (int rep = 0; rep < 5; ++rep) {
      const StrategyProfile pure = testing::random_pure_profile(*game, rng);
      const ReachTable reaches = compute_reaches(*game, pure);
      double total = 0.0;
      int reached = 0;
      for (int z : game->terminals()) {
        total += reaches.total(z);
        if (reaches.total(z) > 0.0) ++reached;
      }
      EXPECT_NEAR(total, 1.0, 1e-12) << name;
      // Kuhn deals 6 ordered hands and each ends in exactly one terminal.
      if (std::string(name) == "kuhn") {
        EXPECT_EQ(reached, 6);
      }
    }
  }
}

TEST(GameTest, DumpListsEveryHistory) {
  const auto game = build_game("kuhn");
  std::istringstream in(dump_game(*game));
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    ++rows;
    EXPECT_EQ(std::count(line.begin(), line.end(), '\t'), 4) << line;
  }
  EXPECT_EQ(rows, game->num_histories());
}

TEST(SuccessorIndexTest, KuhnSuccessorsAreOwnDecisionsOrTerminals) {
  const auto game = build_game("kuhn");
  const SuccessorIndex succ(*game);
  for (int i = 0; i < game->num_infosets(); ++i) {
    const Player p = game->infoset(i).player;
    std::set<int> union_of_actions;
    for (int a = 0; a < game->infoset(i).num_actions(); ++a) {
      for (const auto& edge : succ.of(i, a).edges) {
        const History& target = game->history(edge.target);
        EXPECT_TRUE(target.is_terminal() || (target.is_player() && target.player() == p));
        if (!target.is_terminal()) union_of_actions.insert(target.infoset);
      }
    }
    const auto all = succ.successor_infosets(i);
    EXPECT_EQ(std::set<int>(all.begin(), all.end()), union_of_actions);
  }
  // Player 1 holding J who passed and then faces a bet decides again.
  int found = 0;
  for (int i : game->infosets_of(kPlayer1)) {
    if (game->infoset(i).key != "P1:J:") continue;
    const auto& after_pass = succ.of(i, 0);
    ASSERT_EQ(after_pass.infosets.size(), 1u);
    EXPECT_EQ(game->infoset(after_pass.infosets[0]).key, "P1:J:pb");
    EXPECT_TRUE(succ.of(i, 1).infosets.empty());
    ++found;
  }
  EXPECT_EQ(found, 1);
}

TEST(SuccessorIndexTest, SingleActionMatrixGameHasOnlyTerminalSuccessors) {
  const auto game = build_game("matrix-test", {{"rows", "1"}, {"cols", "1"}});
  const SuccessorIndex succ(*game);
  for (int i = 0; i < game->num_infosets(); ++i) {
    EXPECT_TRUE(succ.of(i, 0).infosets.empty());
    EXPECT_FALSE(succ.of(i, 0).terminals.empty());
  }
}

TEST(SuccessorIndexTest, BottomUpOrdersSuccessorsFirst) {
  const auto game = build_game("leduc");
  const SuccessorIndex succ(*game);
  for (Player p = 0; p < kNumPlayers; ++p) {
    std::map<int, int> position;
    int k = 0;
    for (int i : succ.bottom_up(p)) position[i] = k++;
    for (int i : game->infosets_of(p)) {
      for (int j : succ.successor_infosets(i)) EXPECT_LT(position[j], position[i]);
    }
  }
}

}  // namespace
}  // namespace recfr
