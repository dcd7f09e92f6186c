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

#include <algorithm>
#include <vector>

#include "recfr/game.hpp"

namespace recfr {
namespace {

// Appends the earliest histories below `start` (inclusive) that are terminal
// or belong to player p.
void collect_frontier(const Game& game, Player p, int source, int start,
                      SuccessorIndex::Successors& out) {
  std::vector<int> stack{start};
  while (!stack.empty()) {
    const int h = stack.back();
    stack.pop_back();
    const History& node = game.history(h);
    if (node.is_terminal() || (node.is_player() && node.player() == p)) {
      out.edges.push_back({source, h});
      if (node.is_terminal()) {
        out.terminals.push_back(h);
      } else if (std::find(out.infosets.begin(), out.infosets.end(), node.infoset) ==
                 out.infosets.end()) {
        out.infosets.push_back(node.infoset);
      }
      continue;
    }
    for (int c = node.num_children - 1; c >= 0; --c) stack.push_back(node.first_child + c);
  }
}

}  // namespace

SuccessorIndex::SuccessorIndex(const Game& game) : by_infoset_(game.num_infosets()) {
  for (int i = 0; i < game.num_infosets(); ++i) {
    const Infoset& info = game.infoset(i);
    by_infoset_[i].resize(info.num_actions());
    for (int h : info.histories) {
      for (int a = 0; a < info.num_actions(); ++a) {
        collect_frontier(game, info.player, h, game.child(h, a), by_infoset_[i][a]);
      }
    }
  }
  for (Player p = 0; p < kNumPlayers; ++p) {
    collect_frontier(game, p, -1, 0, root_[p]);
    auto ids = game.infosets_of(p);
    bottom_up_[p].assign(ids.begin(), ids.end());
    // With perfect recall every history of a successor infoset has an
    // ancestor in its predecessor, so first-history index orders them.
    std::sort(bottom_up_[p].begin(), bottom_up_[p].end(), [&](int a, int b) {
      return game.infoset(a).histories.front() > game.infoset(b).histories.front();
    });
  }
}

std::vector<int> SuccessorIndex::successor_infosets(int infoset) const {
  std::vector<int> out;
  for (const auto& s : by_infoset_[infoset]) {
    for (int i : s.infosets) {
      if (std::find(out.begin(), out.end(), i) == out.end()) out.push_back(i);
    }
  }
  return out;
}

std::shared_ptr<const SuccessorIndex> build_successors(const Game& game) {
  return std::make_shared<const SuccessorIndex>(game);
}

}  // namespace recfr
