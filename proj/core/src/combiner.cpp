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

#include "regcomb/combiner.hpp"

#include <algorithm>
#include <numeric>

namespace regcomb {

VertexSet lookahead_flags(const ProductArena& product, const MonitorDfa& monitor, std::size_t position) {
  VertexSet flagged(product.size());
  for (VertexId p = 0; p < product.size(); ++p) {
    const auto& o = product.origin(p);
    if (monitor.is_final(monitor.next(o.states.at(position), product.arena().color(p)))) flagged.insert(p);
  }
  return flagged;
}

RegionDecomposition region_decompose(const Arena& arena, const VertexSet& flagged, const VertexSet& win1_bot) {
  RegionDecomposition d;
  d.s1 = flagged & win1_bot;
  d.s2 = flagged - win1_bot;
  d.attractor1 = attractor(arena, d.s1, Player::kOne);
  d.attractor2 = attractor(arena, d.s2, Player::kTwo);
  d.s1p = d.attractor1.attracted - flagged;
  d.s2p = d.attractor2.attracted - flagged;
  if (d.s1p.intersects(d.s2p))
    throw InternalError("attractor remainders overlap at vertex " +
                        std::to_string((d.s1p & d.s2p).members().front()));
  d.vtop = (flagged | d.s1p | d.s2p).complement();
  d.vtop.for_each([&](VertexId v) {
    const auto succ = arena.successors(v);
    if (std::none_of(succ.begin(), succ.end(), [&](VertexId w) { return d.vtop.contains(w); }))
      throw InternalError("vertex " + std::to_string(v) + " has no edge staying in the unflagged rest");
  });
  return d;
}

Player SolveResult::initial_winner(VertexId v) const {
  return winner_at(ProductVertex{v, tracker.tuples.front()});
}

MooreStrategy pull_back(const MooreStrategy& s, const Arena& base, const ProductArena& product) {
  const auto& g = product.arena();
  const auto n = g.size();
  std::vector<MemoryId> update(s.size() * s.num_colors());
  for (MemoryId m = 0; m < s.size(); ++m)
    for (ColorId c = 0; c < s.num_colors(); ++c) update[m * s.num_colors() + c] = s.update(m, c);
  std::vector<VertexId> action(s.size() * n, kNoVertex);
  for (VertexId p = 0; p < n; ++p) {
    if (g.owner(p) != s.owner()) continue;
    const auto v = product.origin(p).base;
    for (MemoryId m = 0; m < s.size(); ++m) {
      const auto target = s.action(m, v);
      for (auto q : g.successors(p))
        if (product.origin(q).base == target) {
          action[m * n + p] = q;
          break;
        }
    }
  }
  if (s.num_vertices() != base.size()) throw ValidationError("strategy does not fit the base arena");
  return MooreStrategy::create(s.owner(), g, s.size(), s.initial(), std::move(update), std::move(action));
}

namespace {

struct CoreSolution {
  VertexSet win1;
  MooreStrategy s1;
  MooreStrategy s2;

  const MooreStrategy& strategy(Player p) const { return p == Player::kOne ? s1 : s2; }
};

MooreStrategy first_successor(Player p, const Arena& arena) {
  return MooreStrategy::positional(p, arena, std::vector<VertexId>(arena.size(), kNoVertex));
}

MooreStrategy witness_strategy(Player p, const Arena& arena, const AttractorResult& attr) {
  return MooreStrategy::positional(p, arena, attr.witness);
}

std::vector<VertexId> compose(const std::vector<VertexId>& outer, const std::vector<VertexId>& inner) {
  std::vector<VertexId> out(inner.size());
  for (std::size_t i = 0; i < inner.size(); ++i) out[i] = outer[inner[i]];
  return out;
}

void record(std::vector<LevelStats>& levels, std::size_t depth, std::optional<std::size_t> monitor,
            const Arena& g, const CoreSolution& s, std::size_t lar, const Formula& phi) {
  levels.push_back(LevelStats{depth, monitor, g.size(), s.s1.size(), s.s2.size(), lar, phi.to_string()});
}

class Recursion {
 public:
  Recursion(const CombinedCondition& condition, const ProductArena& product, std::vector<std::size_t> position,
            std::vector<std::size_t> order, const SolveOptions& options, std::vector<LevelStats>& levels)
      : condition_(condition), position_(std::move(position)), order_(std::move(order)),
        el_(options.el), observer_(options.region_observer), levels_(levels), flags_(condition.l()) {
    for (std::size_t j = 0; j < condition.l(); ++j)
      if (position_[j] != kUnused) flags_[j] = lookahead_flags(product, condition.monitors()[j], position_[j]);
  }

  static constexpr std::size_t kUnused = static_cast<std::size_t>(-1);

  CoreSolution solve(const Arena& g, const std::vector<VertexId>& to_p, const Formula& phi, std::size_t depth) {
    const auto n = g.size();
    if (phi.is_constant()) {
      CoreSolution s{VertexSet(n, phi.is_true()), first_successor(Player::kOne, g),
                     first_successor(Player::kTwo, g)};
      record(levels_, depth, std::nullopt, g, s, 1, phi);
      return s;
    }
    std::optional<std::size_t> handled;
    for (auto j : order_)
      if (phi.mentions(Formula::Kind::kR, static_cast<std::uint32_t>(j))) {
        handled = j;
        break;
      }
    if (!handled) {
      auto el = solve_el(g, inline_w(phi), el_);
      CoreSolution s{el.win1, el.strategy1, el.strategy2};
      record(levels_, depth, std::nullopt, g, s, el.lar_states, phi);
      return s;
    }
    const auto j = *handled;
    const auto idx = static_cast<std::uint32_t>(j);
    VertexSet flagged(n);
    for (VertexId v = 0; v < n; ++v)
      if (flags_[j].contains(to_p[v])) flagged.insert(v);

    auto substitute = [&](bool value) {
      return phi.map_atoms([&](const Formula& a) {
        return a.kind() == Formula::Kind::kR && a.index() == idx ? Formula::constant(value) : a;
      });
    };
    const auto bot = solve(g, to_p, substitute(false), depth + 1);
    const auto dec = region_decompose(g, flagged, bot.win1);
    if (observer_) observer_(g, flagged, bot.win1, dec);

    std::optional<CoreSolution> top;
    std::optional<SubArena> sub;
    if (!dec.vtop.empty()) {
      sub = restrict(g, dec.vtop);
      top = solve(sub->arena, compose(to_p, sub->parent), substitute(true), depth + 1);
    }

    CoreSolution out{dec.s1 | dec.s1p, first_successor(Player::kOne, g), first_successor(Player::kTwo, g)};
    if (top) top->win1.for_each([&](VertexId v) { out.win1.insert(sub->parent[v]); });

    for (Player p : {Player::kOne, Player::kTwo}) {
      const auto& attr = p == Player::kOne ? dec.attractor1 : dec.attractor2;
      const auto& own_rest = p == Player::kOne ? dec.s1p : dec.s2p;
      std::vector<MooreStrategy> regions{bot.strategy(p), witness_strategy(p, g, attr),
                                         top ? embed(top->strategy(p), *sub, g) : first_successor(p, g)};
      // The opponent's attractor remainder is lost anyway; keep following the ⊥ strategy there.
      std::vector<std::size_t> dispatch(n, 0);
      own_rest.for_each([&](VertexId v) { dispatch[v] = 1; });
      dec.vtop.for_each([&](VertexId v) { dispatch[v] = 2; });
      (p == Player::kOne ? out.s1 : out.s2) = stitch_regional(g, dispatch, regions);
    }
    record(levels_, depth, j, g, out, 0, phi);
    return out;
  }

 private:
  Formula inline_w(const Formula& phi) const {
    return phi.map_atoms([&](const Formula& a) {
      if (a.kind() != Formula::Kind::kW) throw InternalError("unexpected variable in base case");
      return condition_.el_atoms()[a.index()];
    });
  }

  const CombinedCondition& condition_;
  std::vector<std::size_t> position_;
  std::vector<std::size_t> order_;
  const ElOptions& el_;
  const std::function<void(const Arena&, const VertexSet&, const VertexSet&, const RegionDecomposition&)>&
      observer_;
  std::vector<LevelStats>& levels_;
  std::vector<VertexSet> flags_;
};

CoreSolution conj_core(const ProductArena& product, const VertexSet& flagged, const ElFormula& w,
                       const ElOptions& options, const Formula& phi, std::vector<LevelStats>& levels) {
  const auto& g = product.arena();
  const auto trap = attractor(g, flagged, Player::kTwo);
  const auto safe = trap.attracted.complement();
  CoreSolution out{VertexSet(g.size()), first_successor(Player::kOne, g), witness_strategy(Player::kTwo, g, trap)};
  std::size_t lar = 1;
  if (!safe.empty()) {
    const auto sub = restrict(g, safe);
    const auto el = solve_el(sub.arena, w, options);
    lar = el.lar_states;
    el.win1.for_each([&](VertexId v) { out.win1.insert(sub.parent[v]); });
    out.s1 = embed(el.strategy1, sub, g);
    std::vector<MooreStrategy> regions{witness_strategy(Player::kTwo, g, trap), embed(el.strategy2, sub, g)};
    std::vector<std::size_t> dispatch(g.size(), 0);
    safe.for_each([&](VertexId v) { dispatch[v] = 1; });
    out.s2 = stitch_regional(g, dispatch, regions);
  }
  record(levels, 0, 0, g, out, lar, phi);
  return out;
}

CoreSolution disj_core(const Arena& base, const ProductArena& product, const VertexSet& flagged,
                       const ElFormula& w, const ElOptions& options, const Formula& phi,
                       std::vector<LevelStats>& levels) {
  const auto& g = product.arena();
  const auto n = g.size();
  const auto el = solve_el(base, w, options);
  VertexSet doomed(n);
  flagged.for_each([&](VertexId p) {
    if (el.win2.contains(product.origin(p).base)) doomed.insert(p);
  });
  const auto attr = attractor(g, doomed, Player::kTwo);
  CoreSolution out{attr.attracted.complement(), first_successor(Player::kOne, g), first_successor(Player::kTwo, g)};

  std::vector<VertexId> stay(n, kNoVertex);
  out.win1.for_each([&](VertexId p) {
    if (g.owner(p) != Player::kOne) return;
    for (auto q : g.successors(p))
      if (out.win1.contains(q)) {
        stay[p] = q;
        break;
      }
  });
  std::vector<MooreStrategy> regions1{pull_back(el.strategy1, base, product),
                                      MooreStrategy::positional(Player::kOne, g, std::move(stay))};
  std::vector<std::size_t> dispatch1(n, 1);
  flagged.for_each([&](VertexId p) { dispatch1[p] = 0; });
  out.s1 = stitch_regional(g, dispatch1, regions1);

  std::vector<MooreStrategy> regions2{pull_back(el.strategy2, base, product), witness_strategy(Player::kTwo, g, attr)};
  std::vector<std::size_t> dispatch2(n, 0);
  (attr.attracted - doomed).for_each([&](VertexId p) { dispatch2[p] = 1; });
  out.s2 = stitch_regional(g, dispatch2, regions2);
  record(levels, 0, 0, g, out, el.lar_states, phi);
  return out;
}

// Lifts a solution over the product with the `used` monitors to the full result.
SolveResult finish(const Arena& arena, std::span<const MonitorDfa> monitors, const std::vector<std::size_t>& used,
                   const ProductArena& used_product, const CoreSolution& core, std::vector<LevelStats> levels,
                   std::string path) {
  const auto registry = arena.registry();
  std::vector<MonitorDfa> used_monitors;
  for (auto j : used) used_monitors.push_back(monitors[j]);
  const auto used_tracker = make_tracker(registry, used_monitors);
  auto tracker = make_tracker(registry, monitors);
  auto product = used.size() == monitors.size() ? used_product
                                                : product_arena(arena, monitors, ProductScope::kAllHistories);
  std::vector<Player> winner(product.size());
  for (VertexId p = 0; p < product.size(); ++p) {
    const auto& o = product.origin(p);
    ProductVertex projected{o.base, {}};
    for (auto j : used) projected.states.push_back(o.states[j]);
    winner[p] = core.win1.contains(used_product.at(projected)) ? Player::kOne : Player::kTwo;
  }
  StrategyProfile profile{minimize(lift_through_tracker(core.s1, used_product, arena, used_tracker), arena),
                          minimize(lift_through_tracker(core.s2, used_product, arena, used_tracker), arena)};
  return SolveResult{std::move(product), std::move(tracker), std::move(winner), std::move(profile),
                     std::move(levels), std::move(path)};
}

// The non-R part of φ when φ is R_j, R_j ∧ ψ or R_j ∨ ψ with ψ free of R.
struct Shape {
  bool conjunction;
  Formula rest;
};

std::optional<Shape> fast_path_shape(const Formula& phi, std::uint32_t j) {
  if (phi.kind() == Formula::Kind::kR && phi.index() == j) return Shape{true, Formula::constant(true)};
  if (phi.kind() != Formula::Kind::kAnd && phi.kind() != Formula::Kind::kOr) return std::nullopt;
  std::vector<Formula> rest;
  bool found = false;
  for (const auto& c : phi.children()) {
    if (c.kind() == Formula::Kind::kR && c.index() == j && !found) {
      found = true;
      continue;
    }
    if (c.mentions(Formula::Kind::kR, j)) return std::nullopt;
    rest.push_back(c);
  }
  if (!found) return std::nullopt;
  const bool conj = phi.kind() == Formula::Kind::kAnd;
  return Shape{conj, conj ? Formula::conj(std::move(rest)) : Formula::disj(std::move(rest))};
}

}  // namespace

SolveResult solve_combined(const Arena& arena, const CombinedCondition& condition, const SolveOptions& options) {
  if (!same_registry(arena.registry(), condition.registry()))
    throw ValidationError("arena and condition use different color registries");
  const auto l = condition.l();
  std::vector<std::size_t> order = options.monitor_order;
  if (order.empty()) {
    order.resize(l);
    std::iota(order.rbegin(), order.rend(), std::size_t{0});
  } else {
    auto sorted = order;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i)
      if (sorted.size() != l || sorted[i] != i) throw ValidationError("monitor order must be a permutation of 0..l-1");
  }

  const auto& phi = condition.formula();
  std::vector<std::size_t> used;
  std::vector<std::size_t> position(l, static_cast<std::size_t>(-1));
  for (std::size_t j = 0; j < l; ++j)
    if (phi.mentions(Formula::Kind::kR, static_cast<std::uint32_t>(j))) {
      position[j] = used.size();
      used.push_back(j);
    }
  std::vector<MonitorDfa> used_monitors;
  for (auto j : used) used_monitors.push_back(condition.monitors()[j]);
  const auto product = product_arena(arena, used_monitors, ProductScope::kAllHistories);
  std::vector<LevelStats> levels;

  auto inline_w = [&](const Formula& f) {
    return f.map_atoms([&](const Formula& a) { return condition.el_atoms()[a.index()]; });
  };

  if (options.fast_path == FastPath::kAuto && used.size() == 1) {
    if (auto shape = fast_path_shape(phi, static_cast<std::uint32_t>(used[0]))) {
      const auto flagged = lookahead_flags(product, condition.monitors()[used[0]], 0);
      const auto w = inline_w(shape->rest);
      auto core = shape->conjunction ? conj_core(product, flagged, w, options.el, phi, levels)
                                     : disj_core(arena, product, flagged, w, options.el, phi, levels);
      return finish(arena, condition.monitors(), used, product, core, std::move(levels),
                    shape->conjunction ? "conj" : "disj");
    }
  }

  Recursion recursion(condition, product, position, order, options, levels);
  std::vector<VertexId> identity(product.size());
  std::iota(identity.begin(), identity.end(), VertexId{0});
  const auto core = recursion.solve(product.arena(), identity, phi, 0);
  return finish(arena, condition.monitors(), used, product, core, std::move(levels),
                phi.is_constant() ? "constant" : "general");
}

namespace {

SolveResult single_monitor_fast_path(const Arena& arena, const ElFormula& w, const MonitorDfa& monitor,
                                     const ElOptions& options, bool conjunction) {
  if (!same_registry(arena.registry(), monitor.registry()))
    throw ValidationError("arena and monitor use different color registries");
  if (!monitor.is_absorbing()) throw ValidationError("monitor is not absorbing");
  const auto product = product_arena(arena, monitor, ProductScope::kAllHistories);
  const auto flagged = lookahead_flags(product, monitor, 0);
  std::vector<LevelStats> levels;
  const auto phi = conjunction ? Formula::w(0) & Formula::r(0) : Formula::w(0) | Formula::r(0);
  auto core = conjunction ? conj_core(product, flagged, w, options, phi, levels)
                          : disj_core(arena, product, flagged, w, options, phi, levels);
  std::vector<MonitorDfa> monitors{monitor};
  return finish(arena, monitors, {0}, product, core, std::move(levels), conjunction ? "conj" : "disj");
}

}  // namespace

SolveResult conj_fast_path(const Arena& arena, const ElFormula& w, const MonitorDfa& monitor,
                           const ElOptions& options) {
  return single_monitor_fast_path(arena, w, monitor, options, true);
}

SolveResult disj_fast_path(const Arena& arena, const ElFormula& w, const MonitorDfa& monitor,
                           const ElOptions& options) {
  return single_monitor_fast_path(arena, w, monitor, options, false);
}

}  // namespace regcomb
