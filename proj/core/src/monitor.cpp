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

#include "regcomb/monitor.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>

namespace regcomb {

MonitorDfa MonitorDfa::create(RegistryPtr registry, std::size_t num_states, StateId initial,
                              std::vector<StateId> finals, std::vector<StateId> delta) {
  if (!registry) throw ValidationError("monitor without color registry");
  if (num_states == 0) throw ValidationError("monitor needs at least one state");
  if (initial >= num_states) throw ValidationError("monitor initial state out of range");
  if (delta.size() != num_states * registry->size())
    throw ValidationError("incomplete monitor: transition table has " +
                          std::to_string(delta.size()) + " entries, expected " +
                          std::to_string(num_states * registry->size()));
  for (auto q : delta)
    if (q >= num_states) throw ValidationError("monitor transition to unknown state");
  MonitorDfa dfa;
  dfa.registry_ = std::move(registry);
  dfa.initial_ = initial;
  dfa.final_.assign(num_states, 0);
  for (auto f : finals) {
    if (f >= num_states) throw ValidationError("monitor final state out of range");
    dfa.final_[f] = 1;
  }
  dfa.delta_ = std::move(delta);
  return dfa;
}

std::vector<StateId> MonitorDfa::finals() const {
  std::vector<StateId> out;
  for (StateId q = 0; q < final_.size(); ++q)
    if (final_[q]) out.push_back(q);
  return out;
}

bool MonitorDfa::is_absorbing() const {
  for (StateId q = 0; q < num_states(); ++q) {
    if (!final_[q]) continue;
    for (ColorId c = 0; c < num_colors(); ++c)
      if (!final_[next(q, c)]) return false;
  }
  return true;
}

bool MonitorDfa::never_accepts() const {
  std::vector<std::uint8_t> seen(num_states(), 0);
  std::vector<StateId> stack{initial_};
  seen[initial_] = 1;
  while (!stack.empty()) {
    auto q = stack.back();
    stack.pop_back();
    if (final_[q]) return false;
    for (ColorId c = 0; c < num_colors(); ++c) {
      auto r = next(q, c);
      if (!seen[r]) {
        seen[r] = 1;
        stack.push_back(r);
      }
    }
  }
  return true;
}

long WeightMap::max_abs() const {
  long m = 0;
  for (auto w : weights_) m = std::max(m, w < 0 ? -w : w);
  return m;
}

StateId run_dfa(const MonitorDfa& dfa, std::span<const ColorId> word) {
  StateId q = dfa.initial();
  for (auto c : word) {
    if (c >= dfa.num_colors()) throw ValidationError("unknown color id " + std::to_string(c));
    q = dfa.next(q, c);
  }
  return q;
}

bool accepts(const MonitorDfa& dfa, std::span<const ColorId> word) {
  return dfa.is_final(run_dfa(dfa, word));
}

namespace {

// Breadth-first exploration of a deterministic system whose states are keys of
// type K. Returns the discovered keys in discovery order and the transition table.
template <typename K, typename Step>
std::pair<std::vector<K>, std::vector<StateId>> explore(const K& start, std::size_t num_colors,
                                                       Step&& step) {
  std::map<K, StateId> ids;
  std::vector<K> keys;
  std::vector<StateId> delta;
  ids.emplace(start, 0);
  keys.push_back(start);
  for (std::size_t i = 0; i < keys.size(); ++i) {
    for (ColorId c = 0; c < num_colors; ++c) {
      K succ = step(keys[i], c);
      auto [it, inserted] = ids.emplace(succ, static_cast<StateId>(keys.size()));
      if (inserted) keys.push_back(std::move(succ));
      delta.push_back(it->second);
    }
  }
  return {std::move(keys), std::move(delta)};
}

}  // namespace

MonitorDfa dfa_product(const MonitorDfa& a, const MonitorDfa& b, FinalCombiner combiner) {
  if (!same_registry(a.registry(), b.registry()))
    throw ValidationError("dfa_product: monitors use different color registries");
  using Pair = std::pair<StateId, StateId>;
  auto [keys, delta] = explore(Pair{a.initial(), b.initial()}, a.num_colors(),
                               [&](const Pair& p, ColorId c) {
                                 return Pair{a.next(p.first, c), b.next(p.second, c)};
                               });
  std::vector<StateId> finals;
  for (StateId i = 0; i < keys.size(); ++i) {
    const bool fa = a.is_final(keys[i].first);
    const bool fb = b.is_final(keys[i].second);
    if (combiner == FinalCombiner::kAnd ? (fa && fb) : (fa || fb)) finals.push_back(i);
  }
  return MonitorDfa::create(a.registry(), keys.size(), 0, std::move(finals), std::move(delta));
}

MonitorDfa trim(const MonitorDfa& dfa) {
  auto [keys, delta] = explore(dfa.initial(), dfa.num_colors(),
                               [&](StateId q, ColorId c) { return dfa.next(q, c); });
  std::vector<StateId> finals;
  for (StateId i = 0; i < keys.size(); ++i)
    if (dfa.is_final(keys[i])) finals.push_back(i);
  return MonitorDfa::create(dfa.registry(), keys.size(), 0, std::move(finals), std::move(delta));
}

MonitorDfa make_absorbing(const MonitorDfa& dfa) {
  // Every final state collapses onto the sentinel key, which loops on all colors.
  const StateId sink = static_cast<StateId>(dfa.num_states());
  auto canon = [&](StateId q) { return dfa.is_final(q) ? sink : q; };
  auto [keys, delta] = explore(canon(dfa.initial()), dfa.num_colors(), [&](StateId q, ColorId c) {
    return q == sink ? sink : canon(dfa.next(q, c));
  });
  std::vector<StateId> finals;
  for (StateId i = 0; i < keys.size(); ++i)
    if (keys[i] == sink) finals.push_back(i);
  return MonitorDfa::create(dfa.registry(), keys.size(), 0, std::move(finals), std::move(delta));
}

MonitorDfa never_accepting(RegistryPtr registry) {
  const auto n = registry->size();
  return MonitorDfa::create(std::move(registry), 1, 0, {}, std::vector<StateId>(n, 0));
}

namespace {

void check_weights(const RegistryPtr& registry, const WeightMap& weights) {
  if (!registry) throw ValidationError("monitor compiler without registry");
  if (weights.size() != registry->size())
    throw ValidationError("weight map must define a weight for every color");
}

// Levels lower..upper map to states 0..(upper-lower); the sink is the last state.
MonitorDfa compile_energy(RegistryPtr registry, const WeightMap& weights, long upper,
                          EnergyOptions options, bool clamp) {
  check_weights(registry, weights);
  if (upper < options.lower_bound) throw ValidationError("energy upper bound below lower bound");
  if (options.initial_level < options.lower_bound || options.initial_level > upper)
    throw ValidationError("initial energy level outside the bounds");
  const auto levels = static_cast<std::size_t>(upper - options.lower_bound + 1);
  const auto sink = static_cast<StateId>(levels);
  const auto colors = registry->size();
  std::vector<StateId> delta((levels + 1) * colors, sink);
  for (std::size_t s = 0; s < levels; ++s) {
    const long level = options.lower_bound + static_cast<long>(s);
    for (ColorId c = 0; c < colors; ++c) {
      long next = level + weights[c];
      if (clamp) next = std::min(next, upper);
      if (next >= options.lower_bound && next <= upper)
        delta[s * colors + c] = static_cast<StateId>(next - options.lower_bound);
    }
  }
  return MonitorDfa::create(std::move(registry), levels + 1,
                            static_cast<StateId>(options.initial_level - options.lower_bound),
                            {sink}, std::move(delta));
}

}  // namespace

MonitorDfa compile_battery_energy(RegistryPtr registry, const WeightMap& weights, long upper,
                                  EnergyOptions options) {
  return compile_energy(std::move(registry), weights, upper, options, true);
}

MonitorDfa compile_spillover_energy(RegistryPtr registry, const WeightMap& weights, long upper,
                                    EnergyOptions options) {
  return compile_energy(std::move(registry), weights, upper, options, false);
}

MonitorDfa compile_window(RegistryPtr registry, const WeightMap& weights, std::size_t window) {
  check_weights(registry, weights);
  if (window == 0) throw ValidationError("window length must be positive");
  const auto colors = registry->size();
  if (window == 1) {
    // Two states: running and violated.
    std::vector<StateId> delta(2 * colors, 1);
    for (ColorId c = 0; c < colors; ++c) delta[c] = weights[c] < 0 ? 1 : 0;
    return MonitorDfa::create(std::move(registry), 2, 0, {1}, std::move(delta));
  }
  const long lambda = static_cast<long>(window);
  long max_gain = 0;
  for (auto w : weights.values()) max_gain = std::max(max_gain, w);

  // key[age-1] is the running sum of the window opened age letters ago; 0 marks
  // no open window there (open sums are negative). The empty key is the sink.
  using Key = std::vector<long>;
  const Key start(window - 1, 0);
  const Key sink;
  // A sum that cannot reach 0 within the remaining letters is doomed; all doomed
  // sums of one age behave alike and are canonicalized to a single value.
  auto canonical = [&](long sum, long age) {
    const long remaining = lambda - age;
    return std::max(sum, -(remaining * max_gain) - 1);
  };
  auto step = [&](const Key& key, ColorId c) -> Key {
    if (key.empty()) return sink;
    const long w = weights[c];
    Key out(window - 1, 0);
    for (long age = lambda - 1; age >= 1; --age) {
      const long sum = key[static_cast<std::size_t>(age - 1)];
      if (sum == 0) continue;
      const long next = sum + w;
      if (next >= 0) continue;
      if (age + 1 == lambda) return sink;
      out[static_cast<std::size_t>(age)] = canonical(next, age + 1);
    }
    if (w < 0) out[0] = canonical(w, 1);
    return out;
  };
  auto [keys, delta] = explore(start, colors, step);
  std::vector<StateId> finals;
  for (StateId i = 0; i < keys.size(); ++i)
    if (keys[i].empty()) finals.push_back(i);
  return MonitorDfa::create(std::move(registry), keys.size(), 0, std::move(finals),
                            std::move(delta));
}

MonitorDfa compile_color_reach(RegistryPtr registry, std::span<const ColorId> bad) {
  if (!registry) throw ValidationError("monitor compiler without registry");
  const auto colors = registry->size();
  std::vector<StateId> delta(2 * colors, 1);
  for (ColorId c = 0; c < colors; ++c) delta[c] = 0;
  for (auto c : bad) {
    if (c >= colors) throw ValidationError("unknown color id " + std::to_string(c));
    delta[c] = 1;
  }
  return MonitorDfa::create(std::move(registry), 2, 0, {1}, std::move(delta));
}

MonitorDfa compile_color_safety(RegistryPtr registry, std::span<const ColorId> bad) {
  return make_absorbing(compile_color_reach(std::move(registry), bad));
}

Tracker make_tracker(RegistryPtr registry, std::span<const MonitorDfa> monitors) {
  for (const auto& m : monitors)
    if (!same_registry(registry, m.registry()))
      throw ValidationError("tracker: monitors use different color registries");
  std::vector<StateId> start;
  for (const auto& m : monitors) start.push_back(m.initial());
  auto [keys, delta] = explore(start, registry->size(), [&](const std::vector<StateId>& t, ColorId c) {
    std::vector<StateId> next(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) next[i] = monitors[i].next(t[i], c);
    return next;
  });
  auto dfa = MonitorDfa::create(registry, keys.size(), 0, {}, std::move(delta));
  return Tracker{std::move(dfa), std::move(keys)};
}

std::string to_table(const MonitorDfa& dfa) {
  std::ostringstream out;
  out << "states " << dfa.num_states() << "\n";
  out << "initial " << dfa.initial() << "\n";
  out << "final";
  for (auto f : dfa.finals()) out << ' ' << f;
  out << "\n";
  const auto& reg = *dfa.registry();
  for (StateId q = 0; q < dfa.num_states(); ++q)
    for (ColorId c = 0; c < dfa.num_colors(); ++c)
      out << q << ' ' << reg.name(c) << " -> " << dfa.next(q, c) << "\n";
  return out.str();
}

MonitorDfa parse_table(RegistryPtr registry, std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  long states = -1;
  long initial = 0;
  std::vector<StateId> finals;
  std::vector<std::pair<std::pair<long, ColorId>, long>> rows;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& what) {
    throw ParseError("monitor table line " + std::to_string(lineno) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    // Accept the unicode arrow as an alternative to "->".
    for (std::size_t p; (p = line.find("\xE2\x86\x92")) != std::string::npos;)
      line.replace(p, 3, "->");
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    if (head == "states") {
      if (!(ls >> states) || states <= 0) fail("bad state count");
    } else if (head == "initial") {
      if (!(ls >> initial)) fail("bad initial state");
    } else if (head == "final") {
      long f;
      while (ls >> f) {
        if (f < 0) fail("negative state");
        finals.push_back(static_cast<StateId>(f));
      }
      if (!ls.eof()) fail("bad final state list");
    } else {
      std::size_t used = 0;
      long from = 0;
      try {
        from = std::stol(head, &used);
      } catch (const std::exception&) {
        fail("expected 'state color -> state'");
      }
      if (used != head.size()) fail("expected 'state color -> state'");
      std::string color, arrow;
      long to;
      if (!(ls >> color >> arrow >> to) || arrow != "->") fail("expected 'state color -> state'");
      std::string extra;
      if (ls >> extra) fail("trailing input");
      rows.push_back({{from, registry->at(color)}, to});
    }
  }
  if (states <= 0) throw ParseError("monitor table: missing 'states' line");
  const auto n = static_cast<std::size_t>(states);
  const auto colors = registry->size();
  constexpr StateId kUnset = std::numeric_limits<StateId>::max();
  std::vector<StateId> delta(n * colors, kUnset);
  for (const auto& [key, to] : rows) {
    const auto [from, c] = key;
    if (from < 0 || static_cast<std::size_t>(from) >= n || to < 0 ||
        static_cast<std::size_t>(to) >= n)
      throw ValidationError("monitor table: state out of range");
    auto& slot = delta[static_cast<std::size_t>(from) * colors + c];
    if (slot != kUnset && slot != static_cast<StateId>(to))
      throw ValidationError("monitor table: nondeterministic transition");
    slot = static_cast<StateId>(to);
  }
  for (std::size_t i = 0; i < delta.size(); ++i)
    if (delta[i] == kUnset)
      throw ValidationError("incomplete monitor: no transition from state " +
                            std::to_string(i / colors) + " on color '" +
                            registry->name(static_cast<ColorId>(i % colors)) + "'");
  if (initial < 0) throw ValidationError("monitor initial state out of range");
  return MonitorDfa::create(std::move(registry), n, static_cast<StateId>(initial),
                            std::move(finals), std::move(delta));
}

}  // namespace regcomb
