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

#include "regcomb/oracle.hpp"

#include <deque>
#include <map>

#include "regcomb/el_solver.hpp"

namespace regcomb {

ExtendedColors extend_colors(RegistryPtr base, std::size_t monitors) {
  if (monitors > 16) throw ValidationError("too many monitors for the monolithic reduction");
  std::vector<std::string> names;
  for (ColorId c = 0; c < base->size(); ++c)
    for (std::uint32_t flags = 0; flags < (1U << monitors); ++flags) {
      std::string name = base->name(c);
      if (flags) {
        name += "[";
        bool first = true;
        for (std::size_t i = 0; i < monitors; ++i)
          if ((flags >> i) & 1U) {
            if (!first) name += ",";
            name += std::to_string(i + 1);
            first = false;
          }
        name += "]";
      }
      names.push_back(std::move(name));
    }
  return ExtendedColors{base, make_registry(std::move(names)), monitors};
}

ElFormula extended_formula(const CombinedCondition& condition, const ExtendedColors& colors) {
  const auto masks = 1U << colors.monitors;
  auto some_color = [&](ColorId c) {
    std::vector<Formula> parts;
    for (std::uint32_t flags = 0; flags < masks; ++flags) parts.push_back(Formula::inf(colors.id(c, flags)));
    return Formula::disj(std::move(parts));
  };
  return condition.formula().map_atoms([&](const Formula& a) {
    if (a.kind() == Formula::Kind::kW)
      return condition.el_atoms()[a.index()].map_atoms([&](const Formula& inf) { return some_color(inf.index()); });
    std::vector<Formula> flagged;
    for (ColorId c = 0; c < colors.base->size(); ++c)
      for (std::uint32_t flags = 0; flags < masks; ++flags)
        if ((flags >> a.index()) & 1U) flagged.push_back(Formula::inf(colors.id(c, flags)));
    return !Formula::disj(std::move(flagged));
  });
}

std::uint32_t final_flags(const CombinedCondition& condition, std::span<const StateId> states) {
  std::uint32_t flags = 0;
  for (std::size_t i = 0; i < states.size(); ++i)
    if (condition.monitors()[i].is_final(states[i])) flags |= 1U << i;
  return flags;
}

MonolithicGame monolithic_reduce(const Arena& arena, const CombinedCondition& condition) {
  if (!same_registry(arena.registry(), condition.registry()))
    throw ValidationError("arena and condition use different color registries");
  auto product = product_arena(arena, condition.monitors(), ProductScope::kAllHistories);
  auto colors = extend_colors(arena.registry(), condition.l());
  const auto& g = product.arena();
  std::vector<Player> owners(g.size());
  std::vector<ColorId> ext(g.size());
  std::vector<std::vector<VertexId>> succ(g.size());
  for (VertexId p = 0; p < g.size(); ++p) {
    owners[p] = g.owner(p);
    ext[p] = colors.id(g.color(p), final_flags(condition, product.origin(p).states));
    succ[p].assign(g.successors(p).begin(), g.successors(p).end());
  }
  auto recolored = Arena::build(colors.registry, std::move(owners), std::move(ext), std::move(succ));
  auto formula = extended_formula(condition, colors);
  return MonolithicGame{std::move(product), std::move(colors), std::move(recolored), std::move(formula)};
}

OracleResult oracle_solve(const Arena& arena, const CombinedCondition& condition) {
  auto game = monolithic_reduce(arena, condition);
  const auto win1 = el_winners(game.arena, game.formula, ElOptions{.parity_shortcut = false});
  std::vector<Player> winner(game.arena.size());
  for (VertexId p = 0; p < winner.size(); ++p) winner[p] = win1.contains(p) ? Player::kOne : Player::kTwo;
  return OracleResult{std::move(game.product), std::move(winner)};
}

std::vector<ProductVertex> claimed_region(const SolveResult& result, Player player) {
  std::vector<ProductVertex> out;
  for (VertexId p = 0; p < result.product.size(); ++p)
    if (result.winner[p] == player) out.push_back(result.product.origin(p));
  return out;
}

namespace {

struct JointState {
  StateId tracker;
  MemoryId memory;
  friend auto operator<=>(const JointState&, const JointState&) = default;
};

}  // namespace

VerifyReport verify_strategy(const Arena& arena, const CombinedCondition& condition, const MooreStrategy& s,
                             std::span<const ProductVertex> claimed) {
  check_strategy(s, arena);
  if (!same_registry(arena.registry(), condition.registry()))
    throw ValidationError("arena and condition use different color registries");
  const auto num_colors = arena.num_colors();
  const auto tracker = make_tracker(arena.registry(), condition.monitors());

  // Every (tracker state, memory) pair some color history produces, with the
  // BFS parent for reconstructing that history.
  std::map<JointState, std::uint32_t> joint_index{{JointState{tracker.dfa.initial(), s.initial()}, 0}};
  std::vector<JointState> joint{{tracker.dfa.initial(), s.initial()}};
  std::vector<std::pair<std::uint32_t, ColorId>> parent{{0, 0}};
  std::vector<std::uint32_t> joint_delta;
  for (std::size_t i = 0; i < joint.size(); ++i)
    for (ColorId c = 0; c < num_colors; ++c) {
      JointState next{tracker.dfa.next(joint[i].tracker, c), s.update(joint[i].memory, c)};
      auto [it, inserted] = joint_index.emplace(next, static_cast<std::uint32_t>(joint.size()));
      if (inserted) {
        joint.push_back(next);
        parent.emplace_back(static_cast<std::uint32_t>(i), c);
      }
      joint_delta.push_back(it->second);
    }
  std::map<std::vector<StateId>, StateId> tuple_index;
  for (StateId t = 0; t < tracker.size(); ++t) tuple_index.emplace(tracker.tuples[t], t);

  // Configurations (vertex, joint state) reachable from the claimed ones.
  std::map<std::pair<VertexId, std::uint32_t>, VertexId> index;
  std::vector<std::pair<VertexId, std::uint32_t>> configs;
  std::deque<VertexId> queue;
  auto visit = [&](VertexId v, std::uint32_t j) {
    auto [it, inserted] = index.emplace(std::pair{v, j}, static_cast<VertexId>(configs.size()));
    if (inserted) {
      configs.emplace_back(v, j);
      queue.push_back(it->second);
    }
    return it->second;
  };
  std::vector<std::pair<ProductVertex, VertexId>> starts;
  for (const auto& pv : claimed) {
    if (pv.base >= arena.size()) throw ValidationError("claimed vertex out of range");
    auto t = tuple_index.find(pv.states);
    if (t == tuple_index.end()) throw ValidationError("claimed monitor states are unreachable");
    for (std::uint32_t j = 0; j < joint.size(); ++j)
      if (joint[j].tracker == t->second) starts.emplace_back(pv, visit(pv.base, j));
  }
  std::vector<std::vector<VertexId>> succ;
  while (!queue.empty()) {
    const auto x = queue.front();
    queue.pop_front();
    const auto [v, j] = configs[x];
    const auto next = joint_delta[j * num_colors + arena.color(v)];
    std::vector<VertexId> out;
    if (arena.owner(v) == s.owner()) {
      out.push_back(visit(s.action(joint[j].memory, v), next));
    } else {
      for (auto w : arena.successors(v)) out.push_back(visit(w, next));
    }
    if (succ.size() <= x) succ.resize(x + 1);
    succ[x] = std::move(out);
  }
  succ.resize(configs.size());

  VerifyReport report;
  report.configurations = configs.size();
  if (configs.empty()) return report;

  const auto colors = extend_colors(arena.registry(), condition.l());
  const auto opponent_player = opponent(s.owner());
  std::vector<Player> owners(configs.size(), opponent_player);
  std::vector<ColorId> ext(configs.size());
  for (VertexId x = 0; x < configs.size(); ++x) {
    const auto [v, j] = configs[x];
    ext[x] = colors.id(arena.color(v), final_flags(condition, tracker.tuples[joint[j].tracker]));
  }
  const auto game = Arena::build(colors.registry, std::move(owners), std::move(ext), std::move(succ));
  const auto formula = extended_formula(condition, colors);
  const auto win1 = el_winners(game, formula);
  auto owner_wins = [&](VertexId x) { return win1.contains(x) == (s.owner() == Player::kOne); };

  std::optional<VertexId> failing;
  for (const auto& [pv, x] : starts)
    if (!owner_wins(x)) {
      report.passed = false;
      report.failing_vertex = pv;
      failing = x;
      break;
    }
  if (!failing) return report;

  // Counterexample: history to the failing configuration, then the opponent's
  // positional winning play in the record expansion.
  std::vector<ColorId> history;
  for (auto j = configs[*failing].second; j != 0; j = parent[j].first) history.push_back(parent[j].second);
  std::reverse(history.begin(), history.end());

  const auto lar = lar_expand(game, formula, LarScope::kReachable);
  const auto solved = zielonka(lar.game);
  const auto& choice = opponent_player == Player::kOne ? solved.strategy1 : solved.strategy2;
  auto u = lar.product.at(ProductVertex{*failing, {lar.records.initial()}});
  std::map<VertexId, std::size_t> seen;
  std::vector<ColorId> play;
  while (!seen.contains(u)) {
    seen.emplace(u, play.size());
    play.push_back(arena.color(configs[lar.product.origin(u).base].first));
    u = choice[u];
    if (u == kNoVertex) throw InternalError("verifier lost the opponent's winning move");
  }
  Lasso lasso;
  lasso.stem = std::move(history);
  const auto loop = seen.at(u);
  lasso.stem.insert(lasso.stem.end(), play.begin(), play.begin() + static_cast<std::ptrdiff_t>(loop));
  lasso.cycle.assign(play.begin() + static_cast<std::ptrdiff_t>(loop), play.end());
  if (eval_combined_lasso(condition, lasso) != (s.owner() == Player::kTwo))
    throw InternalError("counterexample lasso does not refute the strategy");
  report.counterexample = std::move(lasso);
  return report;
}

BruteForceResult brute_force_positional(const ParityGame& game) {
  check_parity_game(game);
  const auto& arena = game.arena;
  const auto n = arena.size();
  if (n > kMaxBruteForceVertices)
    throw ValidationError("brute force is limited to " + std::to_string(kMaxBruteForceVertices) + " vertices");

  // Mixed-radix counters over successor indices of one player's vertices.
  auto enumerate = [&](Player p, auto&& body) {
    std::vector<VertexId> owned;
    for (VertexId v = 0; v < n; ++v)
      if (arena.owner(v) == p) owned.push_back(v);
    std::vector<std::size_t> digit(owned.size(), 0);
    std::vector<VertexId> choice(n, kNoVertex);
    for (;;) {
      for (std::size_t i = 0; i < owned.size(); ++i) choice[owned[i]] = arena.successors(owned[i])[digit[i]];
      body(choice);
      std::size_t i = 0;
      while (i < owned.size() && ++digit[i] == arena.successors(owned[i]).size()) digit[i++] = 0;
      if (i == owned.size()) return;
    }
  };

  BruteForceResult result{VertexSet(n), VertexSet(n)};
  enumerate(Player::kOne, [&](const std::vector<VertexId>& sigma1) {
    VertexSet wins(n, true);
    enumerate(Player::kTwo, [&](const std::vector<VertexId>& sigma2) {
      for (VertexId v = 0; v < n; ++v) {
        if (!wins.contains(v)) continue;
        // Follow the functional graph to its cycle and take the top priority there.
        std::vector<int> pos(n, -1);
        std::vector<VertexId> path;
        auto x = v;
        while (pos[x] < 0) {
          pos[x] = static_cast<int>(path.size());
          path.push_back(x);
          x = arena.owner(x) == Player::kOne ? sigma1[x] : sigma2[x];
        }
        unsigned top = 0;
        for (auto i = static_cast<std::size_t>(pos[x]); i < path.size(); ++i)
          top = std::max(top, game.priority[path[i]]);
        if (top % 2 != 0) wins.erase(v);
      }
    });
    result.win1 |= wins;
  });
  result.win2 = result.win1.complement();
  return result;
}

PredictabilityAutomaton extract_predictability(const SolveResult& result, VertexId vertex) {
  if (vertex >= result.product.size() || result.tracker.size() == 0)
    throw ValidationError("unknown vertex " + std::to_string(vertex));
  bool known = false;
  for (const auto& o : result.product.origins()) known |= o.base == vertex;
  if (!known) throw ValidationError("unknown vertex " + std::to_string(vertex));
  const auto& dfa = result.tracker.dfa;
  std::vector<StateId> finals;
  for (StateId t = 0; t < result.tracker.size(); ++t)
    if (result.winner_at(ProductVertex{vertex, result.tracker.tuples[t]}) == Player::kOne) finals.push_back(t);
  auto accepting = MonitorDfa::create(dfa.registry(), dfa.num_states(), dfa.initial(), std::move(finals), dfa.table());
  return PredictabilityAutomaton{vertex, std::move(accepting)};
}

}  // namespace regcomb
