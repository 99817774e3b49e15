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

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "regcomb/arena.hpp"
#include "regcomb/common.hpp"
#include "regcomb/condition.hpp"
#include "regcomb/monitor.hpp"

namespace regcomb {

/// Finite-memory strategy read off colors: memory moves on every color of the
/// play (whoever owns the vertex), the action picks a successor at owned vertices.
class MooreStrategy {
 public:
  /// `update[m * C + c]`, `action[m * V + v]`; actions at vertices the owner
  /// does not control are ignored. Throws ValidationError if some action is not
  /// an edge of `arena` or the update table is not total.
  static MooreStrategy create(Player owner, const Arena& arena, std::size_t memory, MemoryId initial,
                              std::vector<MemoryId> update, std::vector<VertexId> action);

  /// Memoryless strategy; `choice[v] == kNoVertex` selects the first successor.
  static MooreStrategy positional(Player owner, const Arena& arena, std::vector<VertexId> choice);

  Player owner() const noexcept { return owner_; }
  std::size_t size() const noexcept { return memory_; }
  MemoryId initial() const noexcept { return initial_; }
  std::size_t num_colors() const noexcept { return num_colors_; }
  std::size_t num_vertices() const noexcept { return owned_.size(); }
  bool owns(VertexId v) const { return owned_.at(v) != 0; }

  MemoryId update(MemoryId m, ColorId c) const { return update_[m * num_colors_ + c]; }
  /// kNoVertex at vertices the owner does not control.
  VertexId action(MemoryId m, VertexId v) const { return action_[m * owned_.size() + v]; }

  /// α̂_u(m₀, history).
  MemoryId run(std::span<const ColorId> history) const;
  MemoryId run_from(MemoryId m, std::span<const ColorId> history) const;

  friend bool operator==(const MooreStrategy&, const MooreStrategy&) = default;

 private:
  MooreStrategy() = default;

  Player owner_ = Player::kOne;
  std::size_t memory_ = 0;
  MemoryId initial_ = 0;
  std::size_t num_colors_ = 0;
  std::vector<std::uint8_t> owned_;
  std::vector<MemoryId> update_;
  std::vector<VertexId> action_;
};

/// The successor chosen after `history` at `v`. Throws ValidationError if the
/// strategy's owner does not control `v`.
VertexId moore_answer(const MooreStrategy& s, std::span<const ColorId> history, VertexId v);

/// Throws ValidationError unless every action is an edge and the update is total.
void check_strategy(const MooreStrategy& s, const Arena& arena);

struct StrategyProfile {
  MooreStrategy p1;
  MooreStrategy p2;

  std::size_t size() const noexcept { return p1.size() + p2.size(); }
};

/// Throws ValidationError unless owners are P1/P2 and both fit `arena`.
void check_profile(const StrategyProfile& profile, const Arena& arena);

/// The play of `profile` after history `prefix` continuing at `start`. The stem
/// of the returned lasso starts with `prefix`.
Lasso simulate_to_lasso(const StrategyProfile& profile, const Arena& arena, VertexId start,
                        std::span<const ColorId> prefix = {});

/// The first `steps` vertices of the same play.
std::vector<VertexId> simulate_vertices(const StrategyProfile& profile, const Arena& arena,
                                        VertexId start, std::span<const ColorId> prefix,
                                        std::size_t steps);

/// Composite of strategies on the same arena: at vertex v it follows
/// `regions[dispatch[v]]`; memory is the product of region memories, restricted
/// to tuples reachable under arbitrary colors. Throws ValidationError on a tag
/// without strategy or owner mismatch.
MooreStrategy stitch_regional(const Arena& arena, std::span<const std::size_t> dispatch,
                              std::span<const MooreStrategy> regions);

/// Strategy on a sub-arena transported to `host`; vertices outside the sub-arena
/// play their first successor.
MooreStrategy embed(const MooreStrategy& s, const SubArena& sub, const Arena& host);
MooreStrategy embed(const MooreStrategy& s, std::span<const VertexId> parent, const Arena& host);

/// Strategy on a product arena turned into one on the base arena: memory is
/// (tracker state, inner memory), trimmed to what arbitrary color words reach.
/// `product` must contain (v, tuple) for every base vertex and tracker tuple.
MooreStrategy lift_through_tracker(const MooreStrategy& s, const ProductArena& product,
                                   const Arena& base, const Tracker& tracker);

/// stitch_regional on the product followed by lift_through_tracker.
MooreStrategy stitch_regional(const Arena& base, const ProductArena& product, const Tracker& tracker,
                              std::span<const std::size_t> dispatch,
                              std::span<const MooreStrategy> regions);

/// Equivalent strategy with the fewest memory states: unreachable states are
/// dropped and states with the same future behavior are merged.
MooreStrategy minimize(const MooreStrategy& s, const Arena& arena);

/// Text table: "player N", "memory M", "initial m", "update m color m'" rows,
/// "action m v succ" rows; rows in ascending order.
std::string to_table(const MooreStrategy& s, const Arena& arena);
/// Throws ParseError on malformed rows, ValidationError on illegal content.
MooreStrategy parse_strategy_table(std::string_view text, const Arena& arena);

/// Memory-state graph, one edge per (memory, color).
std::string to_dot(const MooreStrategy& s, const ColorRegistry& registry,
                   std::string_view name = "strategy");

}  // namespace regcomb
