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

#ifndef RECFR_GAME_HPP_
#define RECFR_GAME_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace recfr {

// Thrown for malformed inputs: unknown game names, invalid parameters,
// profiles that do not match a game, and so on.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Player = int;
inline constexpr int kNumPlayers = 2;
inline constexpr Player kPlayer1 = 0;
inline constexpr Player kPlayer2 = 1;

inline constexpr Player opponent_of(Player p) { return 1 - p; }

enum class Actor : std::int8_t { kPlayer1 = 0, kPlayer2 = 1, kChance = 2, kTerminal = 3 };

const char* to_string(Actor actor);

// One node of the enumerated game tree. Histories are stored in breadth-first
// order, so a parent always precedes its children and the children of a node
// occupy a contiguous index range.
struct History {
  int parent = -1;
  int action = -1;  // index of the edge taken at `parent`
  Actor actor = Actor::kTerminal;
  int infoset = -1;  // player nodes only
  int first_child = -1;
  int num_children = 0;
  int depth = 0;
  double payoff = 0.0;       // player-1 payoff, terminals only
  double chance_prob = 1.0;  // probability of the edge into this node if the parent is chance
  std::string label;         // label of the edge into this node

  bool is_terminal() const { return actor == Actor::kTerminal; }
  bool is_chance() const { return actor == Actor::kChance; }
  bool is_player() const { return actor == Actor::kPlayer1 || actor == Actor::kPlayer2; }
  Player player() const { return static_cast<Player>(actor); }
};

struct Infoset {
  Player player = kPlayer1;
  std::string key;
  std::vector<std::string> actions;
  std::vector<int> histories;
  int offset = 0;      // start of this infoset's slots in an ActionTable
  double delta = 0.0;  // payoff range reachable from the infoset, in chips

  int num_actions() const { return static_cast<int>(actions.size()); }
};

// Immutable, fully enumerated two-player zero-sum extensive-form game.
//
// Payoffs are stored from player 1's view; player 2's payoff is the negation.
// Construction validates chance distributions, per-infoset action lists and
// perfect recall, and computes payoff ranges.
class Game {
 public:
  Game(std::string name, std::vector<History> histories, std::vector<Infoset> infosets,
       double big_blind);

  const std::string& name() const { return name_; }
  double big_blind() const { return big_blind_; }

  int num_histories() const { return static_cast<int>(histories_.size()); }
  const History& history(int h) const { return histories_[h]; }
  std::span<const History> histories() const { return histories_; }
  std::span<const int> terminals() const { return terminals_; }

  int num_infosets() const { return static_cast<int>(infosets_.size()); }
  const Infoset& infoset(int i) const { return infosets_[i]; }
  std::span<const Infoset> infosets() const { return infosets_; }
  std::span<const int> infosets_of(Player p) const { return player_infosets_[p]; }

  // Total number of (infoset, action) slots; the size of an ActionTable.
  int num_infoset_actions() const { return num_infoset_actions_; }
  const std::shared_ptr<const std::vector<int>>& offsets() const { return offsets_; }

  // Payoff of player p at terminal z.
  double payoff(int z, Player p) const {
    return p == kPlayer1 ? histories_[z].payoff : -histories_[z].payoff;
  }
  double min_payoff(Player p) const { return p == kPlayer1 ? min_payoff_ : -max_payoff_; }
  double max_payoff(Player p) const { return p == kPlayer1 ? max_payoff_ : -min_payoff_; }
  // Largest per-infoset payoff range.
  double global_delta() const { return global_delta_; }
  int max_depth() const { return max_depth_; }

  // Concatenated edge labels leading to h, e.g. "Q/K/pb".
  std::string sequence(int h) const;

  // Index of the child of h reached by its a-th action.
  int child(int h, int a) const { return histories_[h].first_child + a; }

 private:
  void validate_and_finalize();

  std::string name_;
  std::vector<History> histories_;
  std::vector<Infoset> infosets_;
  std::vector<int> player_infosets_[kNumPlayers];
  std::vector<int> terminals_;
  std::shared_ptr<const std::vector<int>> offsets_;
  int num_infoset_actions_ = 0;
  double big_blind_ = 1.0;
  double min_payoff_ = 0.0;
  double max_payoff_ = 0.0;
  double global_delta_ = 0.0;
  int max_depth_ = 0;
};

using GameParams = std::map<std::string, std::string>;

// Builds one of the bundled games: "kuhn", "leduc" or "matrix-test".
//
// matrix-test accepts "rows", "cols" (actions of player 1 and 2), "outcomes"
// (number of equiprobable chance outcomes observed by player 1 only),
// "payoff-seed" (payoffs drawn from {-3..3}) or "payoffs" (comma-separated,
// outcome-major then row-major). kuhn accepts "cards" (>= 2). leduc accepts
// "ranks" (>= 2).
std::shared_ptr<const Game> build_game(const std::string& name, const GameParams& params = {});

// Line-based dump: one history per line with index, sequence, actor,
// infoset id and payoff.
std::string dump_game(const Game& game);

// Flat per-(infoset, action) storage laid out by a game's offsets.
class ActionTable {
 public:
  ActionTable() = default;
  explicit ActionTable(const Game& game, double fill = 0.0)
      : offsets_(game.offsets()), values_(game.num_infoset_actions(), fill) {}

  std::span<double> operator[](int infoset) {
    return {values_.data() + (*offsets_)[infoset],
            static_cast<std::size_t>((*offsets_)[infoset + 1] - (*offsets_)[infoset])};
  }
  std::span<const double> operator[](int infoset) const {
    return {values_.data() + (*offsets_)[infoset],
            static_cast<std::size_t>((*offsets_)[infoset + 1] - (*offsets_)[infoset])};
  }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }
  bool empty() const { return values_.empty(); }

 private:
  std::shared_ptr<const std::vector<int>> offsets_;
  std::vector<double> values_;
};

// Per-(player, infoset) probability vectors for both players.
class StrategyProfile : public ActionTable {
 public:
  StrategyProfile() = default;
  explicit StrategyProfile(const Game& game) : ActionTable(game) {}

  static StrategyProfile uniform(const Game& game);

  // Throws Error unless every vector is nonnegative and sums to 1 within tol.
  void validate(const Game& game, double tol = 1e-12) const;
};

// For each (infoset, action): the earliest histories of the same player (or
// terminals) reachable after the action, without further decisions of that
// player. Opponent and chance nodes in between are resolved at evaluation
// time.
class SuccessorIndex {
 public:
  struct Edge {
    int source = -1;  // h in I, or -1 for the virtual root
    int target = -1;  // h' in Succ_p(h.a)
  };
  struct Successors {
    std::vector<Edge> edges;
    std::vector<int> terminals;  // targets that are terminal
    std::vector<int> infosets;   // distinct infosets of non-terminal targets
  };

  explicit SuccessorIndex(const Game& game);

  const Successors& of(int infoset, int action) const { return by_infoset_[infoset][action]; }
  // Successors of the single-action root decision each player is given.
  const Successors& root(Player p) const { return root_[p]; }
  // Union over actions.
  std::vector<int> successor_infosets(int infoset) const;

  // The player's infosets ordered so successors come before predecessors.
  std::span<const int> bottom_up(Player p) const { return bottom_up_[p]; }

 private:
  std::vector<std::vector<Successors>> by_infoset_;
  Successors root_[kNumPlayers];
  std::vector<int> bottom_up_[kNumPlayers];
};

std::shared_ptr<const SuccessorIndex> build_successors(const Game& game);

}  // namespace recfr

#endif  // RECFR_GAME_HPP_
