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

#pragma once

#include <vector>

#include "regcomb/arena.hpp"
#include "regcomb/vertex_set.hpp"

namespace regcomb {

/// Max-even parity game: a play is won by P1 iff the largest priority seen
/// infinitely often is even.
struct ParityGame {
  Arena arena;
  std::vector<unsigned> priority;
};

/// Throws ValidationError unless there is exactly one priority per vertex.
void check_parity_game(const ParityGame& game);

struct ParityResult {
  VertexSet win1;
  VertexSet win2;
  /// Positional choices: `strategy1[v]` for P1 vertices in win1, `strategy2[v]`
  /// for P2 vertices in win2, kNoVertex elsewhere.
  std::vector<VertexId> strategy1;
  std::vector<VertexId> strategy2;

  const VertexSet& win(Player p) const { return p == Player::kOne ? win1 : win2; }
};

/// Zielonka's recursive algorithm.
ParityResult zielonka(const ParityGame& game);

}  // namespace regcomb
