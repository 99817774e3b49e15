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
#include "regcomb/colors.hpp"
#include "regcomb/formula.hpp"
#include "regcomb/monitor.hpp"

namespace regcomb {

/// Emerson–Lei formula: a Formula whose atoms are all Inf(c).
using ElFormula = Formula;

bool is_el_formula(const Formula& f);
/// Colors occurring in Inf atoms, ascending and deduplicated.
std::vector<ColorId> colors_of(const ElFormula& f);

/// Resolver accepting `Inf(name)` for names of `registry`.
AtomResolver el_resolver(const ColorRegistry& registry);
ElFormula parse_el_formula(std::string_view text, const ColorRegistry& registry);
std::string el_to_string(const ElFormula& f, const ColorRegistry& registry);

/// Ultimately periodic color sequence stem·cycle^ω.
struct Lasso {
  std::vector<ColorId> stem;
  std::vector<ColorId> cycle;

  friend bool operator==(const Lasso&, const Lasso&) = default;
};

/// "a b | c d"; an empty stem prints as "| c d".
std::string to_string(const Lasso& lasso, const ColorRegistry& registry);

/// R_l(W) instance: formula φ over W1..Wk (EL atoms) and R1..Rl (regular atoms,
/// r_i holds iff no prefix of the play is accepted by monitor i).
class CombinedCondition {
 public:
  /// Throws ValidationError on out-of-range variables, non-absorbing monitors,
  /// atoms that are not EL formulas, or mismatched registries.
  CombinedCondition(RegistryPtr registry, std::vector<ElFormula> el_atoms,
                    std::vector<MonitorDfa> monitors, Formula formula);

  const RegistryPtr& registry() const noexcept { return registry_; }
  const std::vector<ElFormula>& el_atoms() const noexcept { return el_atoms_; }
  const std::vector<MonitorDfa>& monitors() const noexcept { return monitors_; }
  const Formula& formula() const noexcept { return formula_; }
  std::size_t k() const noexcept { return el_atoms_.size(); }
  std::size_t l() const noexcept { return monitors_.size(); }

  /// φ with every W_i replaced by its EL formula. Requires the formula to
  /// mention no R variable.
  ElFormula inline_el() const;

 private:
  RegistryPtr registry_;
  std::vector<ElFormula> el_atoms_;
  std::vector<MonitorDfa> monitors_;
  Formula formula_;
};

/// Resolver accepting W1..Wk and R1..Rl.
AtomResolver combined_resolver(std::size_t k, std::size_t l);

/// Max-even parity as an EL formula; `priorities[c]` for every registered color.
ElFormula parity_to_el(std::span<const unsigned> priorities);

/// The infinity set equals one of `families`.
ElFormula muller_to_el(std::span<const std::vector<ColorId>> families, std::size_t num_colors);

/// Evaluates with Inf(c) := c occurs in the cycle. Throws ValidationError on an empty cycle.
bool eval_el_lasso(const ElFormula& f, const Lasso& lasso);

/// Truth of r: the monitor reaches no final state along stem·cycle^ω.
bool monitor_avoids(const MonitorDfa& monitor, const Lasso& lasso);

bool eval_combined_lasso(const CombinedCondition& condition, const Lasso& lasso);

/// Substitutes R_i (0-based) by `value`, drops monitor i and renumbers R_j, j > i.
CombinedCondition specialize_formula(const CombinedCondition& condition, std::size_t reg_index,
                                     bool value);

/// Multi-dimension bounded-energy Muller game description. Weight dimensions
/// 0..n-1 are battery-like, n..n+m-1 spill-over-like.
struct MdbemSpec {
  RegistryPtr vertex_names;  ///< one name per vertex; becomes the color registry
  std::vector<Player> owners;
  std::vector<std::vector<VertexId>> successors;
  std::vector<std::vector<long>> weights;  ///< per vertex, length n+m
  std::vector<std::vector<VertexId>> muller_sets;
  std::size_t battery_dims = 0;
  std::size_t spillover_dims = 0;
  std::vector<long> bounds;          ///< length n+m
  std::vector<long> initial_levels;  ///< empty means all 0
  /// Over W_i for x_i (i < p), R_i for y_i (i < n) and R_{n+i} for z_i.
  Formula formula;
};

/// Resolver accepting x1..xp, y1..yn, z1..zm.
AtomResolver mdbem_resolver(std::size_t p, std::size_t n, std::size_t m);

struct MdbemGame {
  Arena arena;
  CombinedCondition condition;
};

/// Colors are vertex identities. Throws ValidationError on dimension mismatch.
MdbemGame compile_mdbem(const MdbemSpec& spec);

}  // namespace regcomb
