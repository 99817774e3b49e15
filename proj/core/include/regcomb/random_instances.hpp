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
#include <random>

#include "regcomb/arena.hpp"
#include "regcomb/condition.hpp"
#include "regcomb/monitor.hpp"
#include "regcomb/parity.hpp"

namespace regcomb {

using Rng = std::mt19937_64;

struct InstanceLimits {
  std::size_t max_vertices = 10;
  std::size_t max_colors = 3;
  std::size_t max_el_atoms = 2;
  std::size_t max_monitors = 2;
  std::size_t max_monitor_states = 3;
};

struct Instance {
  Arena arena;
  CombinedCondition condition;
};

/// Registry "a", "b", ... of the given size.
RegistryPtr letter_registry(std::size_t colors);

/// Every vertex gets one to three successors.
Arena random_arena(Rng& rng, RegistryPtr registry, std::size_t vertices);

/// Complete DFA with a random final set; not necessarily absorbing.
MonitorDfa random_dfa(Rng& rng, RegistryPtr registry, std::size_t states);

/// Absorbing monitor with at most `max_states` states.
MonitorDfa random_monitor(Rng& rng, RegistryPtr registry, std::size_t max_states);

/// Büchi, co-Büchi, parity, Muller or a small Boolean mix of Inf atoms.
ElFormula random_el_formula(Rng& rng, std::size_t colors);

/// Random formula mentioning each of W1..Wk and R1..Rl once.
Formula random_combined_formula(Rng& rng, std::size_t k, std::size_t l);

Instance random_instance(Rng& rng, const InstanceLimits& limits = {});

ParityGame random_parity_game(Rng& rng, std::size_t max_vertices = 6, unsigned max_priority = 4);

}  // namespace regcomb
