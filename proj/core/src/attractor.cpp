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

#include "regcomb/attractor.hpp"

namespace regcomb {

AttractorResult attractor(const Arena& arena, const VertexSet& target, Player player) {
  return attractor(arena, target, player, VertexSet(arena.size(), true));
}

AttractorResult attractor(const Arena& arena, const VertexSet& target, Player player,
                          const VertexSet& within) {
  const auto n = arena.size();
  AttractorResult result{VertexSet(n), std::vector<std::size_t>(n, 0), std::vector<VertexId>(n, kNoVertex)};
  // Remaining successors inside `within` an opponent vertex can still escape to.
  std::vector<std::size_t> remaining(n, 0);
  within.for_each([&](VertexId v) {
    for (auto w : arena.successors(v)) remaining[v] += within.contains(w) ? 1 : 0;
  });
  std::vector<VertexId> frontier;
  (target & within).for_each([&](VertexId v) {
    result.attracted.insert(v);
    frontier.push_back(v);
  });
  for (std::size_t r = 1; !frontier.empty(); ++r) {
    std::vector<VertexId> next;
    for (auto w : frontier) {
      for (auto v : arena.predecessors(w)) {
        if (!within.contains(v) || result.attracted.contains(v)) continue;
        if (arena.owner(v) == player || --remaining[v] == 0) {
          result.attracted.insert(v);
          result.rank[v] = r;
          next.push_back(v);
        }
      }
    }
    // Witnesses are fixed once the layer is complete so ties go to the smallest id.
    for (auto v : next) {
      if (arena.owner(v) != player) continue;
      for (auto w : arena.successors(v)) {
        if (result.attracted.contains(w) && result.rank[w] < r) {
          result.witness[v] = w;
          break;
        }
      }
    }
    frontier = std::move(next);
  }
  return result;
}

}  // namespace regcomb
