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
#include <span>
#include <string>
#include <vector>

#include "regcomb/colors.hpp"
#include "regcomb/common.hpp"

namespace regcomb {

/// Complete deterministic finite automaton over the registry's colors.
///
/// Monitors describe violation languages: a regular atom holds on a play iff
/// no prefix of the play is accepted.
class MonitorDfa {
 public:
  /// `delta[q * num_colors + c]` is the successor of `q` on color `c`.
  /// Throws ValidationError if the table is not total or mentions unknown states.
  static MonitorDfa create(RegistryPtr registry, std::size_t num_states, StateId initial,
                           std::vector<StateId> finals, std::vector<StateId> delta);

  std::size_t num_states() const noexcept { return final_.size(); }
  std::size_t num_colors() const noexcept { return registry_->size(); }
  StateId initial() const noexcept { return initial_; }
  bool is_final(StateId q) const { return final_.at(q) != 0; }
  std::vector<StateId> finals() const;
  StateId next(StateId q, ColorId c) const { return delta_[q * num_colors() + c]; }
  const RegistryPtr& registry() const noexcept { return registry_; }
  const std::vector<StateId>& table() const noexcept { return delta_; }

  /// Final states closed under every color.
  bool is_absorbing() const;
  bool never_accepts() const;

  friend bool operator==(const MonitorDfa& a, const MonitorDfa& b) {
    return a.initial_ == b.initial_ && a.final_ == b.final_ && a.delta_ == b.delta_ &&
           same_registry(a.registry_, b.registry_);
  }

 private:
  MonitorDfa() = default;

  RegistryPtr registry_;
  StateId initial_ = 0;
  std::vector<std::uint8_t> final_;
  std::vector<StateId> delta_;
};

/// Integer weight per registered color (abstract energy delta).
class WeightMap {
 public:
  WeightMap() = default;
  explicit WeightMap(std::vector<long> weights) : weights_(std::move(weights)) {}
  long operator[](ColorId c) const { return weights_.at(c); }
  std::size_t size() const noexcept { return weights_.size(); }
  long max_abs() const;
  const std::vector<long>& values() const noexcept { return weights_; }

 private:
  std::vector<long> weights_;
};

enum class FinalCombiner { kAnd, kOr };

/// δ̂(q₀, word). Throws ValidationError on an unregistered color.
StateId run_dfa(const MonitorDfa& dfa, std::span<const ColorId> word);
bool accepts(const MonitorDfa& dfa, std::span<const ColorId> word);

/// Synchronous product restricted to reachable states.
/// Throws ValidationError when the registries differ.
MonitorDfa dfa_product(const MonitorDfa& a, const MonitorDfa& b, FinalCombiner combiner);

/// Accepts exactly the words that have a prefix in L(dfa); all final states
/// are merged into one sink.
MonitorDfa make_absorbing(const MonitorDfa& dfa);

/// Keeps the states reachable from the initial state, renumbered breadth-first.
MonitorDfa trim(const MonitorDfa& dfa);

/// One-state automaton that never accepts.
MonitorDfa never_accepting(RegistryPtr registry);

struct EnergyOptions {
  long initial_level = 0;
  long lower_bound = 0;
};

/// Violation monitor for battery-like bounded energy: level' = min(b, level + w),
/// violated once the level drops below the lower bound. States: one per level
/// in [lower, b] plus a final sink.
MonitorDfa compile_battery_energy(RegistryPtr registry, const WeightMap& weights, long upper,
                                  EnergyOptions options = {});

/// Violation monitor for spill-over-like bounded energy: violated once the exact
/// running sum leaves [lower, b].
MonitorDfa compile_spillover_energy(RegistryPtr registry, const WeightMap& weights, long upper,
                                    EnergyOptions options = {});

/// Violation monitor for the direct fixed-window objective at threshold 0: a word
/// is accepted iff some window of length `window` opens at a position and every
/// partial sum of that window is negative.
MonitorDfa compile_window(RegistryPtr registry, const WeightMap& weights, std::size_t window);

/// Accepts every word that contains one of `bad`.
MonitorDfa compile_color_reach(RegistryPtr registry, std::span<const ColorId> bad);
/// Safety violation monitor; the absorbing form of the reach monitor.
MonitorDfa compile_color_safety(RegistryPtr registry, std::span<const ColorId> bad);

/// Deterministic product of several monitors. `tuples[t]` is the state vector of
/// tracker state `t`; only tuples reachable from the initial tuple are kept.
struct Tracker {
  MonitorDfa dfa;
  std::vector<std::vector<StateId>> tuples;

  std::size_t size() const noexcept { return tuples.size(); }
};

/// The tracker DFA marks no state final. With no monitors it has one state.
Tracker make_tracker(RegistryPtr registry, std::span<const MonitorDfa> monitors);

/// Textual table: "states N", "initial q", "final q...", then "q color -> q'" rows.
std::string to_table(const MonitorDfa& dfa);
/// Parses the format emitted by `to_table`. Throws ParseError / ValidationError.
MonitorDfa parse_table(RegistryPtr registry, std::string_view text);

}  // namespace regcomb
