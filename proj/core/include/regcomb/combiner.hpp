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

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "regcomb/arena.hpp"
#include "regcomb/attractor.hpp"
#include "regcomb/condition.hpp"
#include "regcomb/el_solver.hpp"
#include "regcomb/strategy.hpp"

namespace regcomb {

/// Lookahead flag of `monitor`, found at `position` of the product tuples, at
/// every product vertex: δ(q, Γ(v)) is final.
VertexSet lookahead_flags(const ProductArena& product, const MonitorDfa& monitor, std::size_t position);

struct RegionDecomposition {
  VertexSet s1;   ///< flagged, won by P1 in the ⊥-game
  VertexSet s2;   ///< flagged, won by P2 in the ⊥-game
  VertexSet s1p;  ///< P1 attractor of s1, minus s1 ∪ s2
  VertexSet s2p;  ///< P2 attractor of s2, minus s1 ∪ s2
  VertexSet vtop;
  AttractorResult attractor1;
  AttractorResult attractor2;
};

/// Throws InternalError if the attractor remainders overlap or some vtop
/// vertex has no successor in vtop.
RegionDecomposition region_decompose(const Arena& arena, const VertexSet& flagged,
                                     const VertexSet& win1_bot);

enum class FastPath { kAuto, kOff };

struct SolveOptions {
  FastPath fast_path = FastPath::kAuto;
  /// Order in which monitors are eliminated; empty means last index first.
  std::vector<std::size_t> monitor_order;
  ElOptions el;
  /// Called at every recursion node that eliminates a monitor, with the node's
  /// arena, its flagged vertices, the ⊥-game winners and the decomposition.
  std::function<void(const Arena&, const VertexSet& flagged, const VertexSet& win1_bot,
                     const RegionDecomposition&)>
      region_observer;
};

/// Bookkeeping for one recursion node.
struct LevelStats {
  std::size_t depth = 0;
  /// Monitor eliminated at this node, if any.
  std::optional<std::size_t> monitor;
  std::size_t vertices = 0;
  std::size_t p1_memory = 0;
  std::size_t p2_memory = 0;
  std::size_t lar_states = 0;
  std::string formula;
};

struct SolveResult {
  /// Base arena × every monitor of the condition, over all reachable tuples.
  ProductArena product;
  /// Monitor tuples reachable from the initial tuple; the predictability skeleton.
  Tracker tracker;
  std::vector<Player> winner;
  /// Over the base arena; each wins from every product vertex it owns in `winner`.
  StrategyProfile profile;
  std::vector<LevelStats> levels;
  /// "constant", "general", "conj" or "disj".
  std::string path;

  Player winner_at(const ProductVertex& pv) const { return winner[product.at(pv)]; }
  /// Winner at (v, initial monitor states).
  Player initial_winner(VertexId v) const;
};

SolveResult solve_combined(const Arena& arena, const CombinedCondition& condition,
                           const SolveOptions& options = {});

/// W ∧ (no prefix in L).
SolveResult conj_fast_path(const Arena& arena, const ElFormula& w, const MonitorDfa& monitor,
                           const ElOptions& options = {});
/// W ∨ (no prefix in L).
SolveResult disj_fast_path(const Arena& arena, const ElFormula& w, const MonitorDfa& monitor,
                           const ElOptions& options = {});

/// A strategy on `base` read through `product`: at (v, q) it moves to the
/// product successor of the base move.
MooreStrategy pull_back(const MooreStrategy& s, const Arena& base, const ProductArena& product);

}  // namespace regcomb
