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

#include "regcomb/arena.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

namespace regcomb {

bool ValidationReport::has(ArenaIssue kind) const {
  return std::any_of(issues.begin(), issues.end(),
                     [&](const ValidationIssue& i) { return i.kind == kind; });
}

std::string ValidationReport::to_string() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < issues.size(); ++i) {
    if (i) out << "; ";
    out << issues[i].message;
  }
  return out.str();
}

namespace {

std::string id_list(const std::vector<VertexId>& ids) {
  std::ostringstream out;
  for (std::size_t i = 0; i < ids.size(); ++i) out << (i ? ", " : "") << ids[i];
  return out.str();
}

}  // namespace

ValidationReport validate_arena(const ArenaDescription& d, const ColorRegistry& registry) {
  ValidationReport report;
  auto add = [&](ArenaIssue kind, std::vector<VertexId> ids, const std::string& what) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    report.issues.push_back({kind, ids, what + ": " + id_list(ids)});
  };

  const std::set<VertexId> p1(d.player1.begin(), d.player1.end());
  const std::set<VertexId> p2(d.player2.begin(), d.player2.end());
  std::vector<VertexId> overlap;
  std::set_intersection(p1.begin(), p1.end(), p2.begin(), p2.end(), std::back_inserter(overlap));
  if (!overlap.empty()) add(ArenaIssue::kOverlappingOwnership, overlap, "vertex owned by both players");

  std::set<VertexId> all(p1);
  all.insert(p2.begin(), p2.end());
  if (!all.empty() && (*all.rbegin() + 1 != all.size())) {
    std::vector<VertexId> bad;
    for (auto v : all)
      if (v >= all.size()) bad.push_back(v);
    add(ArenaIssue::kNonDenseIds, bad, "vertex ids must be 0..n-1");
  }

  std::vector<VertexId> unknown;
  std::set<VertexId> has_out;
  for (const auto& e : d.edges) {
    if (!all.count(e.from)) unknown.push_back(e.from);
    if (!all.count(e.to)) unknown.push_back(e.to);
    if (all.count(e.from) && all.count(e.to)) has_out.insert(e.from);
  }
  std::set<VertexId> colored;
  std::vector<VertexId> bad_color;
  for (const auto& [v, c] : d.coloring) {
    if (!all.count(v)) unknown.push_back(v);
    colored.insert(v);
    if (c >= registry.size()) bad_color.push_back(v);
  }
  if (!unknown.empty()) add(ArenaIssue::kUnknownEndpoint, unknown, "unknown vertex referenced");
  if (!bad_color.empty()) add(ArenaIssue::kUnknownColor, bad_color, "unregistered color on vertex");

  std::vector<VertexId> uncolored, deadlocks;
  for (auto v : all) {
    if (!colored.count(v)) uncolored.push_back(v);
    if (!has_out.count(v)) deadlocks.push_back(v);
  }
  if (!uncolored.empty()) add(ArenaIssue::kMissingColor, uncolored, "vertex without color");
  if (!deadlocks.empty()) add(ArenaIssue::kDeadlock, deadlocks, "deadlock vertex (no outgoing edge)");
  return report;
}

Arena Arena::from_description(const ArenaDescription& d, RegistryPtr registry) {
  if (!registry) throw ValidationError("arena without color registry");
  auto report = validate_arena(d, *registry);
  if (!report.ok()) throw ArenaValidationError(std::move(report));
  const std::size_t n = d.player1.size() + d.player2.size();
  std::vector<Player> owners(n, Player::kOne);
  for (auto v : d.player2) owners[v] = Player::kTwo;
  std::vector<ColorId> colors(n, 0);
  for (const auto& [v, c] : d.coloring) colors[v] = c;
  std::vector<std::vector<VertexId>> succ(n);
  for (const auto& e : d.edges) succ[e.from].push_back(e.to);
  return build(std::move(registry), std::move(owners), std::move(colors), std::move(succ));
}

Arena Arena::build(RegistryPtr registry, std::vector<Player> owners, std::vector<ColorId> colors,
                   std::vector<std::vector<VertexId>> successors) {
  if (!registry) throw ValidationError("arena without color registry");
  const std::size_t n = owners.size();
  if (colors.size() != n || successors.size() != n)
    throw ValidationError("arena: owners, colors and successor lists differ in length");
  Arena a;
  a.registry_ = std::move(registry);
  a.owners_ = std::move(owners);
  a.colors_ = std::move(colors);
  a.succ_offset_.assign(n + 1, 0);
  std::vector<std::size_t> indeg(n, 0);
  for (VertexId v = 0; v < n; ++v) {
    auto& s = successors[v];
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (s.empty()) throw ArenaValidationError(ValidationReport{{{ArenaIssue::kDeadlock, {v},
        "deadlock vertex (no outgoing edge): " + std::to_string(v)}}});
    if (a.colors_[v] >= a.registry_->size())
      throw ArenaValidationError(ValidationReport{{{ArenaIssue::kUnknownColor, {v},
          "unregistered color on vertex: " + std::to_string(v)}}});
    for (auto t : s) {
      if (t >= n) throw ArenaValidationError(ValidationReport{{{ArenaIssue::kUnknownEndpoint, {t},
          "unknown vertex referenced: " + std::to_string(t)}}});
      ++indeg[t];
    }
    a.succ_offset_[v + 1] = a.succ_offset_[v] + s.size();
  }
  a.succ_.reserve(a.succ_offset_[n]);
  for (auto& s : successors) a.succ_.insert(a.succ_.end(), s.begin(), s.end());
  a.pred_offset_.assign(n + 1, 0);
  for (VertexId v = 0; v < n; ++v) a.pred_offset_[v + 1] = a.pred_offset_[v] + indeg[v];
  a.pred_.resize(a.succ_.size());
  std::vector<std::size_t> fill(a.pred_offset_.begin(), a.pred_offset_.end() - 1);
  for (VertexId v = 0; v < n; ++v)
    for (auto t : a.successors(v)) a.pred_[fill[t]++] = v;
  return a;
}

bool Arena::has_edge(VertexId from, VertexId to) const {
  auto s = successors(from);
  return std::binary_search(s.begin(), s.end(), to);
}

std::vector<Edge> Arena::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for (VertexId v = 0; v < size(); ++v)
    for (auto t : successors(v)) out.push_back({v, t});
  return out;
}

ArenaDescription Arena::describe() const {
  ArenaDescription d;
  for (VertexId v = 0; v < size(); ++v) {
    (owners_[v] == Player::kOne ? d.player1 : d.player2).push_back(v);
    d.coloring.emplace_back(v, colors_[v]);
  }
  d.edges = edges();
  return d;
}

SubArena restrict(const Arena& arena, const VertexSet& keep) {
  std::vector<VertexId> parent = keep.members();
  std::vector<VertexId> local(arena.size(), kNoVertex);
  for (VertexId i = 0; i < parent.size(); ++i) local[parent[i]] = i;
  std::vector<Player> owners;
  std::vector<ColorId> colors;
  std::vector<std::vector<VertexId>> succ(parent.size());
  for (VertexId i = 0; i < parent.size(); ++i) {
    const auto v = parent[i];
    owners.push_back(arena.owner(v));
    colors.push_back(arena.color(v));
    for (auto t : arena.successors(v))
      if (local[t] != kNoVertex) succ[i].push_back(local[t]);
    if (succ[i].empty())
      throw RestrictionError(v, "restriction precondition violated: vertex " + std::to_string(v) +
                                    " has no successor inside the kept set");
  }
  return {Arena::build(arena.registry(), std::move(owners), std::move(colors), std::move(succ)),
          std::move(parent)};
}

ProductArena::ProductArena(Arena arena, std::vector<ProductVertex> origin)
    : arena_(std::move(arena)), origin_(std::move(origin)) {
  for (VertexId v = 0; v < origin_.size(); ++v) index_.emplace(origin_[v], v);
}

std::optional<VertexId> ProductArena::find(const ProductVertex& pv) const {
  auto it = index_.find(pv);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

VertexId ProductArena::at(const ProductVertex& pv) const {
  if (auto v = find(pv)) return *v;
  throw ValidationError("product vertex not materialized (base " + std::to_string(pv.base) + ")");
}

namespace {

std::vector<StateId> step_states(std::span<const MonitorDfa> monitors,
                                 const std::vector<StateId>& states, ColorId c) {
  std::vector<StateId> next(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) next[i] = monitors[i].next(states[i], c);
  return next;
}

}  // namespace

ProductArena product_arena(const Arena& arena, std::span<const MonitorDfa> monitors,
                           ProductScope scope) {
  for (const auto& m : monitors)
    if (!same_registry(arena.registry(), m.registry()))
      throw ValidationError("product_arena: monitor and arena use different color registries");

  std::set<ProductVertex> vertices;
  switch (scope) {
    case ProductScope::kFull: {
      std::vector<StateId> t(monitors.size(), 0);
      for (;;) {
        for (VertexId v = 0; v < arena.size(); ++v) vertices.insert({v, t});
        std::size_t i = 0;
        while (i < t.size() && ++t[i] == monitors[i].num_states()) t[i++] = 0;
        if (i == t.size()) break;
      }
      break;
    }
    case ProductScope::kAllHistories: {
      auto tracker = make_tracker(arena.registry(), monitors);
      for (VertexId v = 0; v < arena.size(); ++v)
        for (const auto& t : tracker.tuples) vertices.insert({v, t});
      break;
    }
    case ProductScope::kFromInitial: {
      std::vector<StateId> init;
      for (const auto& m : monitors) init.push_back(m.initial());
      std::deque<ProductVertex> queue;
      for (VertexId v = 0; v < arena.size(); ++v)
        if (vertices.insert({v, init}).second) queue.push_back({v, init});
      while (!queue.empty()) {
        auto pv = std::move(queue.front());
        queue.pop_front();
        auto next = step_states(monitors, pv.states, arena.color(pv.base));
        for (auto t : arena.successors(pv.base)) {
          ProductVertex succ{t, next};
          if (vertices.insert(succ).second) queue.push_back(std::move(succ));
        }
      }
      break;
    }
  }

  std::vector<ProductVertex> origin(vertices.begin(), vertices.end());
  std::map<ProductVertex, VertexId> index;
  for (VertexId i = 0; i < origin.size(); ++i) index.emplace(origin[i], i);
  std::vector<Player> owners;
  std::vector<ColorId> colors;
  std::vector<std::vector<VertexId>> succ(origin.size());
  for (VertexId i = 0; i < origin.size(); ++i) {
    const auto& pv = origin[i];
    owners.push_back(arena.owner(pv.base));
    colors.push_back(arena.color(pv.base));
    auto next = step_states(monitors, pv.states, arena.color(pv.base));
    for (auto t : arena.successors(pv.base)) succ[i].push_back(index.at({t, next}));
  }
  return ProductArena(
      Arena::build(arena.registry(), std::move(owners), std::move(colors), std::move(succ)),
      std::move(origin));
}

ProductArena product_arena(const Arena& arena, const MonitorDfa& monitor, ProductScope scope) {
  return product_arena(arena, std::span<const MonitorDfa>(&monitor, 1), scope);
}

ProductArena restrict(const ProductArena& product, const VertexSet& keep) {
  auto sub = restrict(product.arena(), keep);
  std::vector<ProductVertex> origin;
  origin.reserve(sub.parent.size());
  for (auto p : sub.parent) origin.push_back(product.origin(p));
  return ProductArena(std::move(sub.arena), std::move(origin));
}

CanonicalForm canonical_form(const Arena& arena, std::span<const VertexId> roots,
                             std::span<const std::uint64_t> key) {
  if (key.size() != arena.size()) throw ValidationError("canonical_form: key size mismatch");
  std::vector<VertexId> label(arena.size(), kNoVertex);
  std::vector<VertexId> order;
  std::deque<VertexId> queue;
  auto visit = [&](VertexId v) {
    if (label[v] != kNoVertex) return;
    label[v] = static_cast<VertexId>(order.size());
    order.push_back(v);
    queue.push_back(v);
  };
  for (auto r : roots) visit(r);
  while (!queue.empty()) {
    auto v = queue.front();
    queue.pop_front();
    std::vector<VertexId> succ(arena.successors(v).begin(), arena.successors(v).end());
    std::sort(succ.begin(), succ.end(), [&](VertexId a, VertexId b) { return key[a] < key[b]; });
    for (std::size_t i = 1; i < succ.size(); ++i)
      if (key[succ[i - 1]] == key[succ[i]])
        throw ValidationError("canonical_form: successor keys are not distinct");
    for (auto t : succ) visit(t);
  }
  CanonicalForm form;
  for (auto v : order) {
    form.owners.push_back(arena.owner(v));
    form.colors.push_back(arena.color(v));
    std::vector<VertexId> succ;
    for (auto t : arena.successors(v)) succ.push_back(label[t]);
    std::sort(succ.begin(), succ.end());
    form.successors.push_back(std::move(succ));
  }
  return form;
}

std::string to_dot(const Arena& arena, std::string_view name) {
  std::ostringstream out;
  out << "digraph \"" << name << "\" {\n";
  for (VertexId v = 0; v < arena.size(); ++v) {
    out << "  " << v << " [shape=" << (arena.owner(v) == Player::kOne ? "circle" : "diamond")
        << ", label=\"" << v << ':' << arena.registry()->name(arena.color(v)) << "\"];\n";
  }
  for (VertexId v = 0; v < arena.size(); ++v)
    for (auto t : arena.successors(v)) out << "  " << v << " -> " << t << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace regcomb
