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

#include <compare>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "regcomb/colors.hpp"
#include "regcomb/common.hpp"
#include "regcomb/monitor.hpp"
#include "regcomb/vertex_set.hpp"

namespace regcomb {

struct Edge {
  VertexId from;
  VertexId to;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Raw arena data as it comes from a file or a test: ownership sets, edges,
/// and the coloring. Vertex ids must be exactly 0..n-1.
struct ArenaDescription {
  std::vector<VertexId> player1;
  std::vector<VertexId> player2;
  std::vector<Edge> edges;
  std::vector<std::pair<VertexId, ColorId>> coloring;
};

enum class ArenaIssue {
  kDeadlock,
  kUnknownColor,
  kOverlappingOwnership,
  kUnknownEndpoint,
  kMissingColor,
  kNonDenseIds,
};

struct ValidationIssue {
  ArenaIssue kind;
  std::vector<VertexId> vertices;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  bool ok() const noexcept { return issues.empty(); }
  bool has(ArenaIssue kind) const;
  std::string to_string() const;
};

ValidationReport validate_arena(const ArenaDescription& description, const ColorRegistry& registry);

class ArenaValidationError : public ValidationError {
 public:
  explicit ArenaValidationError(ValidationReport report)
      : ValidationError(report.to_string()), report_(std::move(report)) {}
  const ValidationReport& report() const noexcept { return report_; }

 private:
  ValidationReport report_;
};

/// Finite two-player colored arena with dense vertex ids. Immutable.
class Arena {
 public:
  /// Throws ArenaValidationError when the description is not a legal arena.
  static Arena from_description(const ArenaDescription& description, RegistryPtr registry);

  /// Successor lists are sorted and deduplicated; every vertex needs one.
  static Arena build(RegistryPtr registry, std::vector<Player> owners, std::vector<ColorId> colors,
                     std::vector<std::vector<VertexId>> successors);

  std::size_t size() const noexcept { return owners_.size(); }
  std::size_t num_edges() const noexcept { return succ_.size(); }
  std::size_t num_colors() const noexcept { return registry_->size(); }
  const RegistryPtr& registry() const noexcept { return registry_; }

  Player owner(VertexId v) const { return owners_[v]; }
  ColorId color(VertexId v) const { return colors_[v]; }
  const std::vector<ColorId>& colors() const noexcept { return colors_; }
  std::span<const VertexId> successors(VertexId v) const {
    return {succ_.data() + succ_offset_[v], succ_.data() + succ_offset_[v + 1]};
  }
  std::span<const VertexId> predecessors(VertexId v) const {
    return {pred_.data() + pred_offset_[v], pred_.data() + pred_offset_[v + 1]};
  }
  bool has_edge(VertexId from, VertexId to) const;

  ArenaDescription describe() const;
  std::vector<Edge> edges() const;

  friend bool operator==(const Arena& a, const Arena& b) {
    return a.owners_ == b.owners_ && a.colors_ == b.colors_ && a.succ_offset_ == b.succ_offset_ &&
           a.succ_ == b.succ_ && same_registry(a.registry_, b.registry_);
  }

 private:
  Arena() = default;

  RegistryPtr registry_;
  std::vector<Player> owners_;
  std::vector<ColorId> colors_;
  std::vector<std::size_t> succ_offset_;
  std::vector<VertexId> succ_;
  std::vector<std::size_t> pred_offset_;
  std::vector<VertexId> pred_;
};

/// Restriction of an arena; `parent[v]` is the id of sub-vertex `v` in the input.
struct SubArena {
  Arena arena;
  std::vector<VertexId> parent;
};

class RestrictionError : public ValidationError {
 public:
  RestrictionError(VertexId vertex, const std::string& what) : ValidationError(what), vertex_(vertex) {}
  VertexId vertex() const noexcept { return vertex_; }

 private:
  VertexId vertex_;
};

/// ⟨V₁∩S, V₂∩S, E∩S², Γ|_S⟩. Throws RestrictionError naming the first vertex
/// of `keep` without a successor in `keep`.
SubArena restrict(const Arena& arena, const VertexSet& keep);

struct ProductVertex {
  VertexId base;
  std::vector<StateId> states;
  friend auto operator<=>(const ProductVertex&, const ProductVertex&) = default;
};

/// Which product vertices get materialized.
enum class ProductScope {
  /// Reachable from (v, q₀) for every base vertex v.
  kFromInitial,
  /// V × (monitor-state tuples reachable from q₀ under arbitrary color words).
  kAllHistories,
  /// V × Q₁ × … × Qₗ.
  kFull,
};

/// Arena over product vertices; ids are assigned in lexicographic (base, states) order.
class ProductArena {
 public:
  ProductArena(Arena arena, std::vector<ProductVertex> origin);

  const Arena& arena() const noexcept { return arena_; }
  const ProductVertex& origin(VertexId v) const { return origin_[v]; }
  const std::vector<ProductVertex>& origins() const noexcept { return origin_; }
  std::size_t size() const noexcept { return origin_.size(); }
  std::optional<VertexId> find(const ProductVertex& pv) const;
  VertexId at(const ProductVertex& pv) const;

 private:
  Arena arena_;
  std::vector<ProductVertex> origin_;
  std::map<ProductVertex, VertexId> index_;
};

/// O × A₁ × … × Aₗ: ((v,q),(v',q')) is an edge iff (v,v') ∈ E and q' = δ(q, Γ(v)).
ProductArena product_arena(const Arena& arena, std::span<const MonitorDfa> monitors,
                           ProductScope scope = ProductScope::kFromInitial);
ProductArena product_arena(const Arena& arena, const MonitorDfa& monitor,
                           ProductScope scope = ProductScope::kFromInitial);

/// Restriction that keeps product bookkeeping.
ProductArena restrict(const ProductArena& product, const VertexSet& keep);

/// Relabeling of an arena by breadth-first search from `roots` (in order),
/// visiting successors by ascending `key`. Keys must be distinct among the
/// successors of any vertex. Two arenas are isomorphic under such a keyed
/// renaming iff their canonical forms are equal.
struct CanonicalForm {
  std::vector<Player> owners;
  std::vector<ColorId> colors;
  std::vector<std::vector<VertexId>> successors;
  friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
};

CanonicalForm canonical_form(const Arena& arena, std::span<const VertexId> roots,
                             std::span<const std::uint64_t> key);

/// Graphviz: P1 vertices are circles, P2 vertices diamonds, labels "id:color".
std::string to_dot(const Arena& arena, std::string_view name = "arena");

}  // namespace regcomb
