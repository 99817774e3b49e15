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

struct AttractorResult {
  VertexSet attracted;
  /// Steps needed to force the target; 0 on the target, unspecified outside `attracted`.
  std::vector<std::size_t> rank;
  /// Chosen successor at attracted non-target vertices of the player, else kNoVertex.
  std::vector<VertexId> witness;
};

/// Vertices from which `player` can force a visit to `target`. Witnesses pick
/// the smallest successor id of strictly smaller rank.
AttractorResult attractor(const Arena& arena, const VertexSet& target, Player player);

/// Same, confined to the subgame `within` (edges leaving `within` are ignored;
/// every vertex of `within` must keep a successor in it).
AttractorResult attractor(const Arena& arena, const VertexSet& target, Player player,
                          const VertexSet& within);

}  // namespace regcomb
