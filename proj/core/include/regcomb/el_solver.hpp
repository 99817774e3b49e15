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

#include <cstdint>
#include <optional>
#include <vector>

#include "regcomb/arena.hpp"
#include "regcomb/condition.hpp"
#include "regcomb/parity.hpp"
#include "regcomb/strategy.hpp"

namespace regcomb {

/// An EL formula rewritten over "atoms": sets S of colors standing for
/// "some color of S occurs infinitely often". The positive Inf children of a
/// disjunction become one atom; every other Inf(c) becomes the singleton {c}.
struct AtomizedEl {
  std::vector<std::vector<ColorId>> atoms;
  /// Same shape as the input; Inf(i) now means atom i.
  Formula over_atoms;

  bool eval(std::uint64_t hit_mask) const;
};

AtomizedEl atomize(const ElFormula& f);

/// Largest number of atoms lar_expand accepts.
inline constexpr std::size_t kMaxLarAtoms = 8;

enum class LarScope {
  /// Only (vertex, record) pairs reachable from the initial record.
  kReachable,
  /// Every vertex paired with every record reachable under arbitrary colors.
  kUniform,
};

/// Latest appearance record over the atoms of `f`. On color c the atoms
/// containing c move to the front; the hit set H is every atom up to the
/// deepest moved one. Priority 2|H| if f(H) holds, else 2|H|-1; an empty hit
/// gets 0 or 1 by f(∅).
struct LarExpansion {
  AtomizedEl atomized;
  /// Records as a deterministic automaton over the arena's colors (no finals).
  MonitorDfa records;
  std::vector<std::vector<std::uint8_t>> permutations;
  ProductArena product;
  ParityGame game;
};

/// Throws ValidationError for more than kMaxLarAtoms atoms.
LarExpansion lar_expand(const Arena& arena, const ElFormula& f, LarScope scope = LarScope::kReachable);

/// Max-even priorities per color such that f holds on a nonempty infinity set
/// iff its largest priority is even, if such an assignment exists.
std::optional<std::vector<unsigned>> parity_representation(const ElFormula& f, std::size_t num_colors);

struct ElSolveResult {
  VertexSet win1;
  VertexSet win2;
  /// Each wins from every vertex of its region after any history; defined on all histories.
  MooreStrategy strategy1;
  MooreStrategy strategy2;
  /// Record count of the LAR memory; 1 when no expansion was needed.
  std::size_t lar_states = 1;
  bool used_parity_shortcut = false;

  const VertexSet& win(Player p) const { return p == Player::kOne ? win1 : win2; }
  const MooreStrategy& strategy(Player p) const { return p == Player::kOne ? strategy1 : strategy2; }
};

struct ElOptions {
  /// Solve directly as a parity game when the formula admits it (memoryless strategies).
  bool parity_shortcut = true;
};

ElSolveResult solve_el(const Arena& arena, const ElFormula& f, ElOptions options = {});

/// Winning region of P1 only, via the reachable LAR.
VertexSet el_winners(const Arena& arena, const ElFormula& f, ElOptions options = {});

}  // namespace regcomb
