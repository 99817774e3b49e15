/*
 * Copyright 2026 The regcomb Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "regcomb/parity.hpp"

#include "regcomb/attractor.hpp"

namespace regcomb {

void check_parity_game(const ParityGame& game) {
  if (game.priority.size() != game.arena.size())
    throw ValidationError("parity game needs one priority per vertex");
}

namespace {

class Zielonka {
 public:
  explicit Zielonka(const ParityGame& game)
      : game_(game), choice_(game.arena.size(), kNoVertex) {}

  // Returns {win1, win2} of the subgame `within` and records winning choices.
  std::pair<VertexSet, VertexSet> solve(const VertexSet& within) {
    const auto n = game_.arena.size();
    if (within.empty()) return {VertexSet(n), VertexSet(n)};
    unsigned top = 0;
    within.for_each([&](VertexId v) { top = std::max(top, game_.priority[v]); });
    const Player p = top % 2 == 0 ? Player::kOne : Player::kTwo;
    VertexSet max_set(n);
    within.for_each([&](VertexId v) {
      if (game_.priority[v] == top) max_set.insert(v);
    });
    const auto attr = attractor(game_.arena, max_set, p, within);
    record(attr, p);
    auto sub = solve(within - attr.attracted);
    auto& sub_p = p == Player::kOne ? sub.first : sub.second;
    auto& sub_opp = p == Player::kOne ? sub.second : sub.first;
    if (sub_opp.empty()) {
      max_set.for_each([&](VertexId v) {
        if (game_.arena.owner(v) != p) return;
        for (auto w : game_.arena.successors(v))
          if (within.contains(w)) {
            choice_[v] = w;
            break;
          }
      });
      return p == Player::kOne ? std::pair{within, VertexSet(n)} : std::pair{VertexSet(n), within};
    }
    (void)sub_p;
    const auto escape = attractor(game_.arena, sub_opp, opponent(p), within);
    record(escape, opponent(p));
    auto rest = solve(within - escape.attracted);
    auto& rest_opp = p == Player::kOne ? rest.second : rest.first;
    rest_opp |= escape.attracted;
    return rest;
  }

  std::vector<VertexId> take_choices() { return std::move(choice_); }

 private:
  void record(const AttractorResult& attr, Player p) {
    attr.attracted.for_each([&](VertexId v) {
      if (attr.witness[v] != kNoVertex && game_.arena.owner(v) == p) choice_[v] = attr.witness[v];
    });
  }

  const ParityGame& game_;
  std::vector<VertexId> choice_;
};

}  // namespace

ParityResult zielonka(const ParityGame& game) {
  check_parity_game(game);
  const auto n = game.arena.size();
  Zielonka solver(game);
  auto [win1, win2] = solver.solve(VertexSet(n, true));
  auto choice = solver.take_choices();
  ParityResult result{win1, win2, std::vector<VertexId>(n, kNoVertex), std::vector<VertexId>(n, kNoVertex)};
  for (VertexId v = 0; v < n; ++v) {
    const auto owner = game.arena.owner(v);
    if (owner == Player::kOne && win1.contains(v)) result.strategy1[v] = choice[v];
    if (owner == Player::kTwo && win2.contains(v)) result.strategy2[v] = choice[v];
  }
  return result;
}

}  // namespace regcomb
