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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "regcomb/arena.hpp"
#include "regcomb/combiner.hpp"
#include "regcomb/condition.hpp"
#include "regcomb/parity.hpp"
#include "regcomb/strategy.hpp"

namespace regcomb {

/// Colors (c, flags) where bit i of flags says monitor i sits in a final state.
struct ExtendedColors {
  RegistryPtr base;
  RegistryPtr registry;
  std::size_t monitors = 0;

  ColorId id(ColorId c, std::uint32_t flags) const {
    return static_cast<ColorId>((c << monitors) | flags);
  }
  ColorId base_color(ColorId ext) const { return ext >> monitors; }
  std::uint32_t flags(ColorId ext) const { return ext & ((1U << monitors) - 1); }
};

/// Names are "c" for flags 0 and "c[1,3]" when monitors 1 and 3 are final.
ExtendedColors extend_colors(RegistryPtr base, std::size_t monitors);

/// φ over extended colors: Inf(c) becomes "some (c, ·) infinitely often",
/// R_i becomes "no color with flag i infinitely often".
ElFormula extended_formula(const CombinedCondition& condition, const ExtendedColors& colors);

std::uint32_t final_flags(const CombinedCondition& condition, std::span<const StateId> states);

struct MonolithicGame {
  /// Arena × all monitors over every reachable tuple, original colors.
  ProductArena product;
  ExtendedColors colors;
  /// Same vertices and edges as `product`, recolored by (color, flags).
  Arena arena;
  ElFormula formula;
};

MonolithicGame monolithic_reduce(const Arena& arena, const CombinedCondition& condition);

struct OracleResult {
  ProductArena product;
  std::vector<Player> winner;

  Player winner_at(const ProductVertex& pv) const { return winner[product.at(pv)]; }
};

/// Winner per product vertex via the monolithic Emerson–Lei game, solved
/// through the latest appearance record only.
OracleResult oracle_solve(const Arena& arena, const CombinedCondition& condition);

struct VerifyReport {
  bool passed = true;
  /// Number of (vertex, tracker state, strategy memory) configurations examined.
  std::size_t configurations = 0;
  /// First claimed product vertex from which the strategy can be beaten.
  std::optional<ProductVertex> failing_vertex;
  /// A play consistent with the strategy that it loses; the stem starts with
  /// a history reaching the failing configuration.
  std::optional<Lasso> counterexample;
};

/// Checks that `s` wins for its owner from every claimed product vertex after
/// every color history that leads there, against every opponent behavior.
VerifyReport verify_strategy(const Arena& arena, const CombinedCondition& condition, const MooreStrategy& s,
                             std::span<const ProductVertex> claimed);

/// Claimed region of `player` in a solve result.
std::vector<ProductVertex> claimed_region(const SolveResult& result, Player player);

struct BruteForceResult {
  VertexSet win1;
  VertexSet win2;
};

inline constexpr std::size_t kMaxBruteForceVertices = 8;

/// Enumerates positional strategies of both players. Throws ValidationError
/// beyond kMaxBruteForceVertices vertices.
BruteForceResult brute_force_positional(const ParityGame& game);

struct PredictabilityAutomaton {
  VertexId vertex;
  /// Accepts history w iff P1 wins from the vertex after w.
  MonitorDfa dfa;
};

/// Throws ValidationError for an unknown vertex.
PredictabilityAutomaton extract_predictability(const SolveResult& result, VertexId vertex);

}  // namespace regcomb
