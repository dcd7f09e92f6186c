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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <utility>

namespace recfr {

const char* to_string(Actor actor) {
  switch (actor) {
    case Actor::kPlayer1: return "P1";
    case Actor::kPlayer2: return "P2";
    case Actor::kChance: return "chance";
    case Actor::kTerminal: return "terminal";
  }
  return "?";
}

Game::Game(std::string name, std::vector<History> histories, std::vector<Infoset> infosets,
           double big_blind)
    : name_(std::move(name)),
      histories_(std::move(histories)),
      infosets_(std::move(infosets)),
      big_blind_(big_blind) {
  validate_and_finalize();
}

void Game::validate_and_finalize() {
  if (histories_.empty()) throw Error("game has no histories");
  if (!(big_blind_ > 0.0)) throw Error("big blind must be positive");
  if (histories_[0].parent != -1) throw Error("history 0 must be the root");

  const int n = num_histories();
  for (auto& info : infosets_) info.histories.clear();

  for (int h = 0; h < n; ++h) {
    const History& node = histories_[h];
    if (h > 0) {
      if (node.parent < 0 || node.parent >= h) throw Error("histories are not in topological order");
      const History& parent = histories_[node.parent];
      if (parent.first_child + node.action != h) throw Error("inconsistent child indexing");
    }
    max_depth_ = std::max(max_depth_, node.depth);
    switch (node.actor) {
      case Actor::kTerminal:
        if (node.num_children != 0) throw Error("terminal history with children");
        terminals_.push_back(h);
        break;
      case Actor::kChance: {
        if (node.num_children <= 0) throw Error("chance node without outcomes");
        double total = 0.0;
        for (int c = 0; c < node.num_children; ++c) {
          const double p = histories_[node.first_child + c].chance_prob;
          if (!(p >= 0.0)) throw Error("negative chance probability");
          total += p;
        }
        if (std::abs(total - 1.0) > 1e-12) throw Error("chance probabilities do not sum to 1");
        break;
      }
      case Actor::kPlayer1:
      case Actor::kPlayer2: {
        if (node.infoset < 0 || node.infoset >= num_infosets()) throw Error("bad infoset id");
        Infoset& info = infosets_[node.infoset];
        if (info.player != node.player()) throw Error("infoset player mismatch at " + info.key);
        if (info.num_actions() != node.num_children || node.num_children == 0) {
          throw Error("action count mismatch in infoset " + info.key);
        }
        info.histories.push_back(h);
        break;
      }
    }
  }

  auto offsets = std::make_shared<std::vector<int>>();
  offsets->reserve(infosets_.size() + 1);
  int offset = 0;
  for (int i = 0; i < num_infosets(); ++i) {
    Infoset& info = infosets_[i];
    if (info.histories.empty()) throw Error("empty infoset " + info.key);
    info.offset = offset;
    offsets->push_back(offset);
    offset += info.num_actions();
    player_infosets_[info.player].push_back(i);
  }
  offsets->push_back(offset);
  offsets_ = std::move(offsets);
  num_infoset_actions_ = offset;

  // Perfect recall: the acting player's last own (infoset, action) pair must
  // agree across an infoset; by induction the whole own sequence then agrees.
  std::vector<std::pair<int, int>> last_own[kNumPlayers];
  for (auto& v : last_own) v.assign(n, {-1, -1});
  for (int h = 1; h < n; ++h) {
    const History& parent = histories_[histories_[h].parent];
    for (Player p = 0; p < kNumPlayers; ++p) {
      last_own[p][h] = last_own[p][histories_[h].parent];
      if (parent.is_player() && parent.player() == p) {
        last_own[p][h] = {parent.infoset, histories_[h].action};
      }
    }
  }
  for (const auto& info : infosets_) {
    const auto expected = last_own[info.player][info.histories.front()];
    for (int h : info.histories) {
      if (last_own[info.player][h] != expected) {
        throw Error("perfect recall violated in infoset " + info.key);
      }
    }
  }

  if (terminals_.empty()) throw Error("game has no terminals");
  min_payoff_ = std::numeric_limits<double>::infinity();
  max_payoff_ = -std::numeric_limits<double>::infinity();
  std::vector<double> lo(n, std::numeric_limits<double>::infinity());
  std::vector<double> hi(n, -std::numeric_limits<double>::infinity());
  for (int z : terminals_) {
    lo[z] = hi[z] = histories_[z].payoff;
    min_payoff_ = std::min(min_payoff_, histories_[z].payoff);
    max_payoff_ = std::max(max_payoff_, histories_[z].payoff);
  }
  for (int h = n - 1; h > 0; --h) {
    const int parent = histories_[h].parent;
    lo[parent] = std::min(lo[parent], lo[h]);
    hi[parent] = std::max(hi[parent], hi[h]);
  }
  global_delta_ = 0.0;
  for (auto& info : infosets_) {
    double a = std::numeric_limits<double>::infinity();
    double b = -std::numeric_limits<double>::infinity();
    for (int h : info.histories) {
      a = std::min(a, lo[h]);
      b = std::max(b, hi[h]);
    }
    // The range is invariant under the sign flip of player 2's view.
    info.delta = b - a;
    global_delta_ = std::max(global_delta_, info.delta);
  }
}

std::string Game::sequence(int h) const {
  std::vector<const std::string*> labels;
  for (int cur = h; cur > 0; cur = histories_[cur].parent) labels.push_back(&histories_[cur].label);
  std::string out;
  for (auto it = labels.rbegin(); it != labels.rend(); ++it) out += **it;
  return out.empty() ? std::string("<root>") : out;
}

std::string dump_game(const Game& game) {
  std::ostringstream out;
  out << "# game " << game.name() << ": " << game.num_histories() << " histories, "
      << game.num_infosets() << " infosets, " << game.terminals().size() << " terminals\n";
  out << "# index\tsequence\tactor\tinfoset\tpayoff_p1\n";
  char buf[64];
  for (int h = 0; h < game.num_histories(); ++h) {
    const History& node = game.history(h);
    out << h << '\t' << game.sequence(h) << '\t' << to_string(node.actor) << '\t';
    if (node.is_player()) {
      out << node.infoset << ':' << game.infoset(node.infoset).key;
    } else {
      out << '-';
    }
    out << '\t';
    if (node.is_terminal()) {
      std::snprintf(buf, sizeof(buf), "%.17g", node.payoff);
      out << buf;
    } else {
      out << '-';
    }
    out << '\n';
  }
  return out.str();
}

StrategyProfile StrategyProfile::uniform(const Game& game) {
  StrategyProfile profile(game);
  for (int i = 0; i < game.num_infosets(); ++i) {
    auto probs = profile[i];
    std::fill(probs.begin(), probs.end(), 1.0 / static_cast<double>(probs.size()));
  }
  return profile;
}

void StrategyProfile::validate(const Game& game, double tol) const {
  if (static_cast<int>(values().size()) != game.num_infoset_actions()) {
    throw Error("strategy profile does not match game " + game.name());
  }
  for (int i = 0; i < game.num_infosets(); ++i) {
    double total = 0.0;
    for (double p : (*this)[i]) {
      if (!(p >= -tol)) throw Error("negative probability at infoset " + game.infoset(i).key);
      total += p;
    }
    if (std::abs(total - 1.0) > tol) {
      throw Error("probabilities do not sum to 1 at infoset " + game.infoset(i).key);
    }
  }
}

}  // namespace recfr
