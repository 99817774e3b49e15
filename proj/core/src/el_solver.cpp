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

#include "regcomb/el_solver.hpp"

#include <algorithm>
#include <map>

namespace regcomb {

bool AtomizedEl::eval(std::uint64_t hit_mask) const {
  return over_atoms.eval([&](const Formula& a) { return ((hit_mask >> a.index()) & 1U) != 0; });
}

AtomizedEl atomize(const ElFormula& f) {
  if (!is_el_formula(f)) throw ValidationError("atomize expects an Emerson-Lei formula");
  std::map<std::vector<ColorId>, std::uint32_t> index;
  AtomizedEl out;
  auto atom_for = [&](std::vector<ColorId> colors) {
    std::sort(colors.begin(), colors.end());
    colors.erase(std::unique(colors.begin(), colors.end()), colors.end());
    auto [it, inserted] = index.emplace(colors, static_cast<std::uint32_t>(out.atoms.size()));
    if (inserted) out.atoms.push_back(std::move(colors));
    return Formula::inf(it->second);
  };
  std::function<Formula(const Formula&)> rewrite = [&](const Formula& g) -> Formula {
    switch (g.kind()) {
      case Formula::Kind::kTrue:
      case Formula::Kind::kFalse: return g;
      case Formula::Kind::kInf: return atom_for({g.index()});
      case Formula::Kind::kNot: return !rewrite(g.children()[0]);
      case Formula::Kind::kOr: {
        // The positive Inf children of a disjunction share one atom.
        std::vector<ColorId> colors;
        std::vector<Formula> parts;
        for (const auto& c : g.children()) {
          if (c.kind() == Formula::Kind::kInf)
            colors.push_back(c.index());
          else
            parts.push_back(rewrite(c));
        }
        if (!colors.empty()) parts.push_back(atom_for(std::move(colors)));
        return Formula::disj(std::move(parts));
      }
      case Formula::Kind::kAnd: {
        std::vector<Formula> parts;
        for (const auto& c : g.children()) parts.push_back(rewrite(c));
        return Formula::conj(std::move(parts));
      }
      default: throw InternalError("unexpected atom in Emerson-Lei formula");
    }
  };
  out.over_atoms = rewrite(f);
  return out;
}

namespace {

struct Records {
  MonitorDfa dfa;
  std::vector<std::vector<std::uint8_t>> perms;
  std::vector<unsigned> priority;  // [record * C + color]
};

Records build_records(const RegistryPtr& registry, const AtomizedEl& atomized) {
  const auto num_colors = registry->size();
  const auto k = atomized.atoms.size();
  std::vector<std::uint64_t> hits(num_colors, 0);  // atoms containing each color
  for (std::size_t i = 0; i < k; ++i)
    for (auto c : atomized.atoms[i])
      if (c < num_colors) hits[c] |= std::uint64_t{1} << i;

  std::vector<std::uint8_t> start(k);
  for (std::size_t i = 0; i < k; ++i) start[i] = static_cast<std::uint8_t>(i);
  std::map<std::vector<std::uint8_t>, StateId> index{{start, 0}};
  Records r{never_accepting(registry), {start}, {}};
  std::vector<StateId> delta;
  for (std::size_t s = 0; s < r.perms.size(); ++s) {
    for (ColorId c = 0; c < num_colors; ++c) {
      const auto& perm = r.perms[s];
      std::uint64_t h = 0;
      std::size_t deepest = 0;
      bool any = false;
      for (std::size_t pos = 0; pos < k; ++pos)
        if ((hits[c] >> perm[pos]) & 1U) {
          deepest = pos;
          any = true;
        }
      if (any)
        for (std::size_t pos = 0; pos <= deepest; ++pos) h |= std::uint64_t{1} << perm[pos];
      const auto size = static_cast<unsigned>(std::popcount(h));
      const bool good = atomized.eval(h);
      r.priority.push_back(size == 0 ? (good ? 0U : 1U) : (good ? 2 * size : 2 * size - 1));

      std::vector<std::uint8_t> next;
      next.reserve(k);
      for (auto a : perm)
        if ((hits[c] >> a) & 1U) next.push_back(a);
      for (auto a : perm)
        if (!((hits[c] >> a) & 1U)) next.push_back(a);
      auto [it, inserted] = index.emplace(next, static_cast<StateId>(r.perms.size()));
      if (inserted) r.perms.push_back(std::move(next));
      delta.push_back(it->second);
    }
  }
  r.dfa = MonitorDfa::create(registry, r.perms.size(), 0, {}, std::move(delta));
  return r;
}

}  // namespace

LarExpansion lar_expand(const Arena& arena, const ElFormula& f, LarScope scope) {
  auto atomized = atomize(f);
  if (atomized.atoms.size() > kMaxLarAtoms)
    throw ValidationError("formula has " + std::to_string(atomized.atoms.size()) +
                          " distinct Inf atoms; at most " + std::to_string(kMaxLarAtoms) +
                          " are supported by the LAR expansion");
  for (const auto& atom : atomized.atoms)
    for (auto c : atom)
      if (c >= arena.num_colors()) throw ValidationError("formula mentions unregistered color #" + std::to_string(c));
  auto records = build_records(arena.registry(), atomized);
  auto product = product_arena(arena, records.dfa,
                               scope == LarScope::kUniform ? ProductScope::kAllHistories
                                                           : ProductScope::kFromInitial);
  std::vector<unsigned> priority(product.size());
  const auto num_colors = arena.num_colors();
  for (VertexId p = 0; p < product.size(); ++p) {
    const auto& o = product.origin(p);
    priority[p] = records.priority[o.states[0] * num_colors + arena.color(o.base)];
  }
  ParityGame game{product.arena(), std::move(priority)};
  return LarExpansion{std::move(atomized), std::move(records.dfa), std::move(records.perms),
                      std::move(product), std::move(game)};
}

std::optional<std::vector<unsigned>> parity_representation(const ElFormula& f, std::size_t num_colors) {
  const auto relevant = colors_of(f);
  constexpr std::size_t kMaxRelevant = 16;
  if (relevant.size() > kMaxRelevant) return std::nullopt;
  for (auto c : relevant)
    if (c >= num_colors) throw ValidationError("formula mentions unregistered color #" + std::to_string(c));
  const auto r = relevant.size();
  std::vector<std::uint8_t> table(std::size_t{1} << r);
  for (std::uint32_t mask = 0; mask < table.size(); ++mask)
    table[mask] = f.eval([&](const Formula& a) {
      const auto pos = std::lower_bound(relevant.begin(), relevant.end(), a.index()) - relevant.begin();
      return ((mask >> pos) & 1U) != 0;
    });

  // Peel off, from the top, the colors whose presence alone decides f.
  struct Group {
    bool value;
    std::uint32_t mask;
  };
  std::vector<Group> groups;
  std::uint32_t remaining = static_cast<std::uint32_t>(table.size() - 1);
  while (remaining) {
    std::uint32_t top = 0;
    for (std::size_t i = 0; i < r; ++i) {
      const std::uint32_t bit = 1U << i;
      if (!(remaining & bit)) continue;
      const auto rest = remaining & ~bit;
      const auto value = table[bit];
      bool constant = true;
      for (std::uint32_t sub = rest;; sub = (sub - 1) & rest) {
        if (table[sub | bit] != value) {
          constant = false;
          break;
        }
        if (sub == 0) break;
      }
      if (constant) top |= bit;
    }
    if (!top) return std::nullopt;
    const bool value = table[top & (~top + 1)] != 0;
    for (std::size_t i = 0; i < r; ++i)
      if (((top >> i) & 1U) && (table[1U << i] != 0) != value) return std::nullopt;
    groups.push_back({value, top});
    remaining &= ~top;
  }

  std::vector<unsigned> priority(num_colors, table[0] ? 0U : 1U);
  unsigned current = table[0] ? 0U : 1U;
  bool first = relevant.size() == num_colors;
  for (auto it = groups.rbegin(); it != groups.rend(); ++it) {
    const unsigned parity = it->value ? 0U : 1U;
    if (first) {
      current = parity;
      first = false;
    } else {
      ++current;
      if (current % 2 != parity) ++current;
    }
    for (std::size_t i = 0; i < r; ++i)
      if ((it->mask >> i) & 1U) priority[relevant[i]] = current;
  }
  return priority;
}

namespace {

MooreStrategy first_successor(Player p, const Arena& arena) {
  return MooreStrategy::positional(p, arena, std::vector<VertexId>(arena.size(), kNoVertex));
}

ElSolveResult constant_result(const Arena& arena, bool p1_wins) {
  const auto n = arena.size();
  return ElSolveResult{VertexSet(n, p1_wins), VertexSet(n, !p1_wins), first_successor(Player::kOne, arena),
                       first_successor(Player::kTwo, arena), 1, false};
}

MooreStrategy positional_on_region(Player p, const Arena& arena, const VertexSet& region,
                                   const std::vector<VertexId>& choice) {
  std::vector<VertexId> c(arena.size(), kNoVertex);
  region.for_each([&](VertexId v) { c[v] = choice[v]; });
  return MooreStrategy::positional(p, arena, std::move(c));
}

}  // namespace

ElSolveResult solve_el(const Arena& arena, const ElFormula& f, ElOptions options) {
  const auto n = arena.size();
  if (f.is_constant()) return constant_result(arena, f.is_true());

  if (options.parity_shortcut) {
    if (auto priorities = parity_representation(f, arena.num_colors())) {
      std::vector<unsigned> by_vertex(n);
      for (VertexId v = 0; v < n; ++v) by_vertex[v] = (*priorities)[arena.color(v)];
      const auto result = zielonka(ParityGame{arena, std::move(by_vertex)});
      return ElSolveResult{result.win1,
                           result.win2,
                           positional_on_region(Player::kOne, arena, result.win1, result.strategy1),
                           positional_on_region(Player::kTwo, arena, result.win2, result.strategy2),
                           1,
                           true};
    }
  }

  const auto lar = lar_expand(arena, f, LarScope::kUniform);
  const auto solved = zielonka(lar.game);
  const auto records = lar.records.num_states();
  const auto num_colors = arena.num_colors();

  ElSolveResult out{VertexSet(n), VertexSet(n), first_successor(Player::kOne, arena),
                    first_successor(Player::kTwo, arena), records, false};
  for (VertexId v = 0; v < n; ++v) {
    const bool p1 = solved.win1.contains(lar.product.at(ProductVertex{v, {lar.records.initial()}}));
    for (StateId s = 0; s < records; ++s)
      if (solved.win1.contains(lar.product.at(ProductVertex{v, {s}})) != p1)
        throw InternalError("LAR winner depends on the record at vertex " + std::to_string(v));
    (p1 ? out.win1 : out.win2).insert(v);
  }
  std::vector<MemoryId> update(records * num_colors);
  for (StateId s = 0; s < records; ++s)
    for (ColorId c = 0; c < num_colors; ++c) update[s * num_colors + c] = lar.records.next(s, c);
  for (Player p : {Player::kOne, Player::kTwo}) {
    const auto& region = out.win(p);
    const auto& choice = p == Player::kOne ? solved.strategy1 : solved.strategy2;
    std::vector<VertexId> action(records * n, kNoVertex);
    for (StateId s = 0; s < records; ++s)
      for (VertexId v = 0; v < n; ++v) {
        if (arena.owner(v) != p) continue;
        VertexId to = arena.successors(v).front();
        if (region.contains(v)) to = lar.product.origin(choice[lar.product.at(ProductVertex{v, {s}})]).base;
        action[s * n + v] = to;
      }
    (p == Player::kOne ? out.strategy1 : out.strategy2) =
        MooreStrategy::create(p, arena, records, lar.records.initial(), update, std::move(action));
  }
  return out;
}

VertexSet el_winners(const Arena& arena, const ElFormula& f, ElOptions options) {
  const auto n = arena.size();
  if (f.is_constant()) return VertexSet(n, f.is_true());
  if (options.parity_shortcut) {
    if (auto priorities = parity_representation(f, arena.num_colors())) {
      std::vector<unsigned> by_vertex(n);
      for (VertexId v = 0; v < n; ++v) by_vertex[v] = (*priorities)[arena.color(v)];
      return zielonka(ParityGame{arena, std::move(by_vertex)}).win1;
    }
  }
  const auto lar = lar_expand(arena, f, LarScope::kReachable);
  const auto solved = zielonka(lar.game);
  VertexSet win1(n);
  for (VertexId v = 0; v < n; ++v)
    if (solved.win1.contains(lar.product.at(ProductVertex{v, {lar.records.initial()}}))) win1.insert(v);
  return win1;
}

}  // namespace regcomb
