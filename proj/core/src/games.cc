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

// Kuhn poker, Leduc poker and a configurable matrix test game, enumerated
// into a Game by a generic breadth-first builder.

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "recfr/game.hpp"

namespace recfr {
namespace {

class State {
 public:
  virtual ~State() = default;
  virtual Actor actor() const = 0;
  virtual int num_actions() const = 0;
  virtual std::string label(int action) const = 0;
  virtual double chance_prob(int /*action*/) const { return 1.0; }
  virtual std::unique_ptr<State> child(int action) const = 0;
  virtual std::string infoset_key() const = 0;
  virtual double payoff() const = 0;  // player 1, terminals only
};

std::shared_ptr<const Game> enumerate(std::string name, std::unique_ptr<State> root,
                                      double big_blind) {
  std::vector<History> histories;
  std::vector<Infoset> infosets;
  std::map<std::string, int> infoset_ids;
  std::vector<std::unique_ptr<State>> pending;

  histories.emplace_back();
  pending.push_back(std::move(root));
  for (std::size_t h = 0; h < histories.size(); ++h) {
    std::unique_ptr<State> state = std::move(pending[h]);
    const Actor actor = state->actor();
    histories[h].actor = actor;
    if (actor == Actor::kTerminal) {
      histories[h].payoff = state->payoff();
      continue;
    }
    const int n = state->num_actions();
    if (actor != Actor::kChance) {
      std::string key = std::string(to_string(actor)) + ":" + state->infoset_key();
      auto [it, inserted] = infoset_ids.emplace(key, static_cast<int>(infosets.size()));
      if (inserted) {
        Infoset info;
        info.player = static_cast<Player>(actor);
        info.key = key;
        for (int a = 0; a < n; ++a) info.actions.push_back(state->label(a));
        infosets.push_back(std::move(info));
      }
      histories[h].infoset = it->second;
    }
    histories[h].first_child = static_cast<int>(histories.size());
    histories[h].num_children = n;
    for (int a = 0; a < n; ++a) {
      History child;
      child.parent = static_cast<int>(h);
      child.action = a;
      child.depth = histories[h].depth + 1;
      child.label = state->label(a);
      if (actor == Actor::kChance) child.chance_prob = state->chance_prob(a);
      histories.push_back(std::move(child));
      pending.push_back(state->child(a));
    }
  }
  return std::make_shared<const Game>(std::move(name), std::move(histories), std::move(infosets),
                                      big_blind);
}

int parse_int(const GameParams& params, const std::string& key, int fallback) {
  auto it = params.find(key);
  if (it == params.end()) return fallback;
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(it->second, &used);
  } catch (const std::exception&) {
    throw Error("game parameter '" + key + "' is not an integer: " + it->second);
  }
  if (used != it->second.size()) {
    throw Error("game parameter '" + key + "' is not an integer: " + it->second);
  }
  return value;
}

void reject_unknown(const GameParams& params, const std::set<std::string>& known,
                    const std::string& game) {
  for (const auto& [key, value] : params) {
    if (!known.count(key)) throw Error("unknown parameter '" + key + "' for game " + game);
  }
}

// ---------------------------------------------------------------------------
// Kuhn poker: ante 1, one card each from `cards` ranks, a single bet of 1.

class KuhnState final : public State {
 public:
  explicit KuhnState(int cards) : cards_(cards) {}

  Actor actor() const override {
    if (hand_[0] < 0 || hand_[1] < 0) return Actor::kChance;
    if (is_terminal()) return Actor::kTerminal;
    return static_cast<Actor>(bets_.size() % 2);
  }
  int num_actions() const override {
    if (hand_[0] < 0) return cards_;
    if (hand_[1] < 0) return cards_ - 1;
    return 2;
  }
  std::string label(int action) const override {
    if (hand_[0] < 0) return card_name(action) + "/";
    if (hand_[1] < 0) return card_name(dealt_card(action)) + "/";
    return action == 0 ? "p" : "b";
  }
  double chance_prob(int) const override { return 1.0 / num_actions(); }
  std::unique_ptr<State> child(int action) const override {
    auto next = std::make_unique<KuhnState>(*this);
    if (hand_[0] < 0) {
      next->hand_[0] = action;
    } else if (hand_[1] < 0) {
      next->hand_[1] = dealt_card(action);
    } else {
      next->bets_.push_back(action == 0 ? 'p' : 'b');
    }
    return next;
  }
  std::string infoset_key() const override {
    const int p = static_cast<int>(bets_.size() % 2);
    return card_name(hand_[p]) + ":" + bets_;
  }
  double payoff() const override {
    const double winner = hand_[0] > hand_[1] ? 1.0 : -1.0;
    if (bets_ == "pp") return winner;
    if (bets_ == "bp") return 1.0;
    if (bets_ == "pbp") return -1.0;
    return 2.0 * winner;  // "bb" or "pbb"
  }

 private:
  bool is_terminal() const {
    return bets_ == "pp" || bets_ == "bp" || bets_ == "bb" || bets_ == "pbp" || bets_ == "pbb";
  }
  int dealt_card(int action) const { return action < hand_[0] ? action : action + 1; }
  std::string card_name(int card) const {
    return cards_ == 3 ? std::string(1, "JQK"[card]) : std::to_string(card);
  }

  int cards_;
  std::array<int, 2> hand_{-1, -1};
  std::string bets_;
};

// ---------------------------------------------------------------------------
// Leduc poker: 2 suits x `ranks` ranks, ante 1, two betting rounds with raise
// sizes 2 and 4, at most two raises per round, one public card dealt between
// the rounds. A private card pairing the public card wins; otherwise the
// higher rank wins and equal ranks split.

class LeducState final : public State {
 public:
  static constexpr int kMaxRaises = 2;

  explicit LeducState(int ranks) : ranks_(ranks) {}

  Actor actor() const override {
    if (terminal_) return Actor::kTerminal;
    if (hand_[0] < 0 || hand_[1] < 0) return Actor::kChance;
    if (round_ == 2 && public_card_ < 0) return Actor::kChance;
    return static_cast<Actor>(current_);
  }
  int num_actions() const override {
    if (actor() == Actor::kChance) return static_cast<int>(remaining_deck().size());
    return static_cast<int>(legal_moves().size());
  }
  std::string label(int action) const override {
    if (actor() == Actor::kChance) return card_name(remaining_deck()[action]) + "/";
    return std::string(1, legal_moves()[action]);
  }
  double chance_prob(int) const override { return 1.0 / num_actions(); }

  std::unique_ptr<State> child(int action) const override {
    auto next = std::make_unique<LeducState>(*this);
    if (actor() == Actor::kChance) {
      const int card = remaining_deck()[action];
      if (hand_[0] < 0) {
        next->hand_[0] = card;
      } else if (hand_[1] < 0) {
        next->hand_[1] = card;
      } else {
        next->public_card_ = card;
      }
      return next;
    }
    next->apply(legal_moves()[action]);
    return next;
  }

  std::string infoset_key() const override {
    std::string key = card_name(hand_[current_]) + ":" + sequence_[0];
    if (round_ == 2) key += "/" + card_name(public_card_) + ":" + sequence_[1];
    return key;
  }

  double payoff() const override {
    if (folded_ >= 0) return folded_ == 0 ? -contributed_[0] : contributed_[1];
    const int r0 = hand_rank(0);
    const int r1 = hand_rank(1);
    if (r0 == r1) return 0.0;
    return r0 > r1 ? contributed_[1] : -contributed_[0];
  }

 private:
  std::vector<int> remaining_deck() const {
    std::vector<int> deck;
    for (int c = 0; c < 2 * ranks_; ++c) {
      if (c != hand_[0] && c != hand_[1] && c != public_card_) deck.push_back(c);
    }
    return deck;
  }
  std::string legal_moves() const {
    std::string moves;
    if (contributed_[current_] < stake_) moves += 'f';
    moves += 'c';
    if (raises_ < kMaxRaises) moves += 'r';
    return moves;
  }
  void apply(char move) {
    sequence_[round_ - 1] += move;
    if (move == 'f') {
      folded_ = current_;
      terminal_ = true;
      return;
    }
    if (move == 'c') {
      contributed_[current_] = stake_;
      ++calls_;
    } else {
      stake_ += round_ == 1 ? 2.0 : 4.0;
      contributed_[current_] = stake_;
      ++raises_;
      calls_ = 0;
    }
    const bool round_over = (raises_ == 0 && calls_ == 2) || (raises_ > 0 && calls_ == 1);
    if (!round_over) {
      current_ = 1 - current_;
      return;
    }
    if (round_ == 2) {
      terminal_ = true;
      return;
    }
    round_ = 2;
    raises_ = 0;
    calls_ = 0;
    current_ = 0;
  }
  int hand_rank(int p) const {
    const int own = hand_[p] / 2;
    const int board = public_card_ / 2;
    return own == board ? ranks_ + own : own;
  }
  std::string card_name(int card) const {
    const int rank = card / 2;
    std::string name = ranks_ == 3 ? std::string(1, "JQK"[rank]) : std::to_string(rank);
    return name + (card % 2 == 0 ? "s" : "h");
  }

  int ranks_;
  std::array<int, 2> hand_{-1, -1};
  int public_card_ = -1;
  int round_ = 1;
  int current_ = 0;
  int raises_ = 0;
  int calls_ = 0;
  int folded_ = -1;
  bool terminal_ = false;
  double stake_ = 1.0;
  std::array<double, 2> contributed_{1.0, 1.0};
  std::array<std::string, 2> sequence_;
};

// ---------------------------------------------------------------------------
// Matrix test game: chance picks one of `outcomes` equiprobable states that
// player 1 observes; player 1 picks a row, then player 2 picks a column
// without observing anything.

struct MatrixSpec {
  int rows = 2;
  int cols = 2;
  int outcomes = 1;
  std::vector<double> payoffs;  // outcome-major, then row-major
};

class MatrixState final : public State {
 public:
  explicit MatrixState(std::shared_ptr<const MatrixSpec> spec) : spec_(std::move(spec)) {}

  Actor actor() const override {
    if (outcome_ < 0) return Actor::kChance;
    if (row_ < 0) return Actor::kPlayer1;
    if (col_ < 0) return Actor::kPlayer2;
    return Actor::kTerminal;
  }
  int num_actions() const override {
    if (outcome_ < 0) return spec_->outcomes;
    return row_ < 0 ? spec_->rows : spec_->cols;
  }
  std::string label(int action) const override {
    if (outcome_ < 0) return "o" + std::to_string(action) + "/";
    return (row_ < 0 ? "r" : "c") + std::to_string(action);
  }
  double chance_prob(int) const override { return 1.0 / spec_->outcomes; }
  std::unique_ptr<State> child(int action) const override {
    auto next = std::make_unique<MatrixState>(*this);
    if (outcome_ < 0) {
      next->outcome_ = action;
    } else if (row_ < 0) {
      next->row_ = action;
    } else {
      next->col_ = action;
    }
    return next;
  }
  std::string infoset_key() const override {
    return row_ < 0 ? "o" + std::to_string(outcome_) : std::string("-");
  }
  double payoff() const override {
    return spec_->payoffs[(outcome_ * spec_->rows + row_) * spec_->cols + col_];
  }

 private:
  std::shared_ptr<const MatrixSpec> spec_;
  int outcome_ = -1;
  int row_ = -1;
  int col_ = -1;
};

std::shared_ptr<const Game> build_matrix(const GameParams& params) {
  reject_unknown(params, {"rows", "cols", "outcomes", "payoff-seed", "payoffs"}, "matrix-test");
  auto spec = std::make_shared<MatrixSpec>();
  spec->rows = parse_int(params, "rows", 2);
  spec->cols = parse_int(params, "cols", 2);
  spec->outcomes = parse_int(params, "outcomes", 1);
  if (spec->rows < 1 || spec->cols < 1 || spec->outcomes < 1) {
    throw Error("matrix-test requires rows, cols and outcomes >= 1");
  }
  const std::size_t cells = static_cast<std::size_t>(spec->rows) * spec->cols * spec->outcomes;
  if (auto it = params.find("payoffs"); it != params.end()) {
    std::stringstream in(it->second);
    std::string item;
    while (std::getline(in, item, ',')) {
      try {
        spec->payoffs.push_back(std::stod(item));
      } catch (const std::exception&) {
        throw Error("matrix-test payoff is not a number: " + item);
      }
    }
    if (spec->payoffs.size() != cells) {
      throw Error("matrix-test expects " + std::to_string(cells) + " payoffs");
    }
  } else {
    std::mt19937_64 rng(static_cast<std::uint64_t>(parse_int(params, "payoff-seed", 0)));
    for (std::size_t i = 0; i < cells; ++i) {
      spec->payoffs.push_back(static_cast<double>(static_cast<int>(rng() % 7) - 3));
    }
  }
  return enumerate("matrix-test", std::make_unique<MatrixState>(std::move(spec)), 1.0);
}

}  // namespace

std::shared_ptr<const Game> build_game(const std::string& name, const GameParams& params) {
  if (name == "kuhn") {
    reject_unknown(params, {"cards"}, name);
    const int cards = parse_int(params, "cards", 3);
    if (cards < 2) throw Error("kuhn requires at least 2 cards");
    return enumerate("kuhn", std::make_unique<KuhnState>(cards), 1.0);
  }
  if (name == "leduc") {
    reject_unknown(params, {"ranks"}, name);
    const int ranks = parse_int(params, "ranks", 3);
    if (ranks < 2) throw Error("leduc requires at least 2 ranks");
    // Big blind is the first-round bet size.
    return enumerate("leduc", std::make_unique<LeducState>(ranks), 2.0);
  }
  if (name == "matrix-test") return build_matrix(params);
  throw Error("unknown game '" + name + "' (expected kuhn, leduc or matrix-test)");
}

}  // namespace recfr
