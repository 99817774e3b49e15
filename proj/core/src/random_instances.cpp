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

#include "regcomb/random_instances.hpp"

#include <algorithm>

namespace regcomb {

namespace {

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool coin(Rng& rng) { return uniform(rng, 0, 1) == 1; }

}  // namespace

RegistryPtr letter_registry(std::size_t colors) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < colors; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
  return make_registry(std::move(names));
}

Arena random_arena(Rng& rng, RegistryPtr registry, std::size_t vertices) {
  std::vector<Player> owners(vertices);
  std::vector<ColorId> colors(vertices);
  std::vector<std::vector<VertexId>> succ(vertices);
  for (VertexId v = 0; v < vertices; ++v) {
    owners[v] = coin(rng) ? Player::kOne : Player::kTwo;
    colors[v] = static_cast<ColorId>(uniform(rng, 0, registry->size() - 1));
    const auto degree = uniform(rng, 1, std::min<std::size_t>(3, vertices));
    while (succ[v].size() < degree) {
      const auto w = static_cast<VertexId>(uniform(rng, 0, vertices - 1));
      if (std::find(succ[v].begin(), succ[v].end(), w) == succ[v].end()) succ[v].push_back(w);
    }
  }
  return Arena::build(std::move(registry), std::move(owners), std::move(colors), std::move(succ));
}

MonitorDfa random_dfa(Rng& rng, RegistryPtr registry, std::size_t states) {
  std::vector<StateId> delta(states * registry->size());
  for (auto& d : delta) d = static_cast<StateId>(uniform(rng, 0, states - 1));
  std::vector<StateId> finals;
  for (StateId q = 0; q < states; ++q)
    if (uniform(rng, 0, 2) == 0) finals.push_back(q);
  return MonitorDfa::create(std::move(registry), states, 0, std::move(finals), std::move(delta));
}

MonitorDfa random_monitor(Rng& rng, RegistryPtr registry, std::size_t max_states) {
  // Prefer monitors that can still go either way from the initial state.
  MonitorDfa m = never_accepting(registry);
  for (int attempt = 0; attempt < 16; ++attempt) {
    m = trim(make_absorbing(random_dfa(rng, registry, uniform(rng, std::min<std::size_t>(2, max_states), max_states))));
    if (m.num_states() >= 2 && !m.is_final(m.initial())) break;
  }
  return m;
}

ElFormula random_el_formula(Rng& rng, std::size_t colors) {
  auto color = [&] { return static_cast<ColorId>(uniform(rng, 0, colors - 1)); };
  switch (uniform(rng, 0, 4)) {
    case 0: return Formula::inf(color());
    case 1: return !Formula::inf(color());
    case 2: {
      std::vector<unsigned> priorities(colors);
      for (auto& p : priorities) p = static_cast<unsigned>(uniform(rng, 0, 3));
      return parity_to_el(priorities);
    }
    case 3: {
      std::vector<std::vector<ColorId>> families(uniform(rng, 1, 2));
      for (auto& f : families) {
        for (ColorId c = 0; c < colors; ++c)
          if (coin(rng)) f.push_back(c);
        if (f.empty()) f.push_back(color());
      }
      return muller_to_el(families, colors);
    }
    default: {
      auto literal = [&] { return coin(rng) ? Formula::inf(color()) : !Formula::inf(color()); };
      auto clause = [&] { return coin(rng) ? literal() & literal() : literal() | literal(); };
      return coin(rng) ? clause() | clause() : clause() & clause();
    }
  }
}

Formula random_combined_formula(Rng& rng, std::size_t k, std::size_t l) {
  if (k + l == 0) return Formula::constant(coin(rng));
  // Every variable occurs once, in random order, under random connectives.
  std::vector<Formula> vars;
  for (std::uint32_t i = 0; i < k; ++i) vars.push_back(Formula::w(i));
  for (std::uint32_t i = 0; i < l; ++i) vars.push_back(Formula::r(i));
  std::shuffle(vars.begin(), vars.end(), rng);
  auto literal = [&](Formula f) { return uniform(rng, 0, 3) == 0 ? !f : f; };
  Formula acc = literal(vars.front());
  for (std::size_t i = 1; i < vars.size(); ++i) acc = coin(rng) ? acc & literal(vars[i]) : acc | literal(vars[i]);
  return acc;
}

Instance random_instance(Rng& rng, const InstanceLimits& limits) {
  auto registry = letter_registry(uniform(rng, std::min<std::size_t>(2, limits.max_colors), limits.max_colors));
  auto arena = random_arena(rng, registry, uniform(rng, std::min<std::size_t>(2, limits.max_vertices), limits.max_vertices));
  const auto k = uniform(rng, 0, limits.max_el_atoms);
  const auto l = uniform(rng, 0, limits.max_monitors);
  std::vector<ElFormula> atoms;
  for (std::size_t i = 0; i < k; ++i) atoms.push_back(random_el_formula(rng, registry->size()));
  std::vector<MonitorDfa> monitors;
  for (std::size_t i = 0; i < l; ++i) monitors.push_back(random_monitor(rng, registry, limits.max_monitor_states));
  auto formula = random_combined_formula(rng, k, l);
  return Instance{std::move(arena), CombinedCondition(registry, std::move(atoms), std::move(monitors), std::move(formula))};
}

ParityGame random_parity_game(Rng& rng, std::size_t max_vertices, unsigned max_priority) {
  auto arena = random_arena(rng, letter_registry(1), uniform(rng, 1, max_vertices));
  std::vector<unsigned> priority(arena.size());
  for (auto& p : priority) p = static_cast<unsigned>(uniform(rng, 0, max_priority));
  return ParityGame{std::move(arena), std::move(priority)};
}

}  // namespace regcomb
