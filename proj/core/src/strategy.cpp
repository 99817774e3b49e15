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

#include "regcomb/strategy.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>

namespace regcomb {

MooreStrategy MooreStrategy::create(Player owner, const Arena& arena, std::size_t memory,
                                    MemoryId initial, std::vector<MemoryId> update,
                                    std::vector<VertexId> action) {
  const auto n = arena.size();
  const auto num_colors = arena.num_colors();
  if (memory == 0) throw ValidationError("strategy needs at least one memory state");
  if (initial >= memory) throw ValidationError("initial memory state out of range");
  if (update.size() != memory * num_colors)
    throw ValidationError("update table has " + std::to_string(update.size()) + " entries, expected " +
                          std::to_string(memory * num_colors));
  if (action.size() != memory * n)
    throw ValidationError("action table has " + std::to_string(action.size()) + " entries, expected " +
                          std::to_string(memory * n));
  MooreStrategy s;
  s.owner_ = owner;
  s.memory_ = memory;
  s.initial_ = initial;
  s.num_colors_ = num_colors;
  s.owned_.resize(n);
  for (VertexId v = 0; v < n; ++v) s.owned_[v] = arena.owner(v) == owner;
  for (MemoryId m = 0; m < memory; ++m)
    for (VertexId v = 0; v < n; ++v)
      if (!s.owned_[v]) action[m * n + v] = kNoVertex;
  s.update_ = std::move(update);
  s.action_ = std::move(action);
  check_strategy(s, arena);
  return s;
}

MooreStrategy MooreStrategy::positional(Player owner, const Arena& arena, std::vector<VertexId> choice) {
  if (choice.size() != arena.size()) throw ValidationError("positional choice must cover every vertex");
  for (VertexId v = 0; v < arena.size(); ++v)
    if (choice[v] == kNoVertex) choice[v] = arena.successors(v).front();
  return create(owner, arena, 1, 0, std::vector<MemoryId>(arena.num_colors(), 0), std::move(choice));
}

MemoryId MooreStrategy::run(std::span<const ColorId> history) const { return run_from(initial_, history); }

MemoryId MooreStrategy::run_from(MemoryId m, std::span<const ColorId> history) const {
  for (auto c : history) {
    if (c >= num_colors_) throw ValidationError("history mentions unregistered color #" + std::to_string(c));
    m = update(m, c);
  }
  return m;
}

VertexId moore_answer(const MooreStrategy& s, std::span<const ColorId> history, VertexId v) {
  if (v >= s.num_vertices() || !s.owns(v))
    throw ValidationError("vertex " + std::to_string(v) + " is not owned by " + to_string(s.owner()));
  return s.action(s.run(history), v);
}

void check_strategy(const MooreStrategy& s, const Arena& arena) {
  if (s.num_vertices() != arena.size() || s.num_colors() != arena.num_colors())
    throw ValidationError("strategy does not fit the arena");
  for (MemoryId m = 0; m < s.size(); ++m) {
    for (ColorId c = 0; c < s.num_colors(); ++c)
      if (s.update(m, c) >= s.size())
        throw ValidationError("update(" + std::to_string(m) + ", " + arena.registry()->name(c) +
                              ") leaves the memory");
    for (VertexId v = 0; v < arena.size(); ++v) {
      if (arena.owner(v) != s.owner()) continue;
      const auto to = s.action(m, v);
      if (to == kNoVertex || to >= arena.size() || !arena.has_edge(v, to))
        throw ValidationError("action(" + std::to_string(m) + ", " + std::to_string(v) +
                              ") is not an edge");
    }
  }
}

void check_profile(const StrategyProfile& profile, const Arena& arena) {
  if (profile.p1.owner() != Player::kOne || profile.p2.owner() != Player::kTwo)
    throw ValidationError("profile owners must be P1 and P2");
  check_strategy(profile.p1, arena);
  check_strategy(profile.p2, arena);
}

namespace {

struct Config {
  VertexId v;
  MemoryId m1;
  MemoryId m2;
  friend auto operator<=>(const Config&, const Config&) = default;
};

}  // namespace

Lasso simulate_to_lasso(const StrategyProfile& profile, const Arena& arena, VertexId start,
                        std::span<const ColorId> prefix) {
  if (start >= arena.size()) throw ValidationError("start vertex out of range");
  Config cur{start, profile.p1.run(prefix), profile.p2.run(prefix)};
  std::map<Config, std::size_t> seen;
  std::vector<ColorId> colors;
  while (!seen.contains(cur)) {
    seen.emplace(cur, colors.size());
    const auto c = arena.color(cur.v);
    colors.push_back(c);
    const auto& mover = arena.owner(cur.v) == Player::kOne ? profile.p1 : profile.p2;
    const auto mem = arena.owner(cur.v) == Player::kOne ? cur.m1 : cur.m2;
    cur = {mover.action(mem, cur.v), profile.p1.update(cur.m1, c), profile.p2.update(cur.m2, c)};
  }
  const auto loop = seen.at(cur);
  Lasso lasso;
  lasso.stem.assign(prefix.begin(), prefix.end());
  lasso.stem.insert(lasso.stem.end(), colors.begin(), colors.begin() + static_cast<std::ptrdiff_t>(loop));
  lasso.cycle.assign(colors.begin() + static_cast<std::ptrdiff_t>(loop), colors.end());
  return lasso;
}

std::vector<VertexId> simulate_vertices(const StrategyProfile& profile, const Arena& arena,
                                        VertexId start, std::span<const ColorId> prefix,
                                        std::size_t steps) {
  if (start >= arena.size()) throw ValidationError("start vertex out of range");
  Config cur{start, profile.p1.run(prefix), profile.p2.run(prefix)};
  std::vector<VertexId> out;
  for (std::size_t i = 0; i < steps; ++i) {
    out.push_back(cur.v);
    const auto c = arena.color(cur.v);
    const auto& mover = arena.owner(cur.v) == Player::kOne ? profile.p1 : profile.p2;
    const auto mem = arena.owner(cur.v) == Player::kOne ? cur.m1 : cur.m2;
    cur = {mover.action(mem, cur.v), profile.p1.update(cur.m1, c), profile.p2.update(cur.m2, c)};
  }
  return out;
}

namespace {

// Breadth-first exploration of a deterministic memory over all colors; ids are
// assigned in discovery order with `start` as 0.
template <typename Key, typename Step>
std::pair<std::vector<Key>, std::vector<MemoryId>> explore_memory(const Key& start,
                                                                  std::size_t num_colors, Step step) {
  std::map<Key, MemoryId> index{{start, 0}};
  std::vector<Key> keys{start};
  std::vector<MemoryId> delta;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    for (ColorId c = 0; c < num_colors; ++c) {
      Key next = step(keys[i], c);
      auto [it, inserted] = index.emplace(next, static_cast<MemoryId>(keys.size()));
      if (inserted) keys.push_back(std::move(next));
      delta.push_back(it->second);
    }
  }
  return {std::move(keys), std::move(delta)};
}

}  // namespace

MooreStrategy stitch_regional(const Arena& arena, std::span<const std::size_t> dispatch,
                              std::span<const MooreStrategy> regions) {
  if (regions.empty()) throw ValidationError("stitch needs at least one region strategy");
  if (dispatch.size() != arena.size()) throw ValidationError("dispatch must cover every vertex");
  const auto owner = regions.front().owner();
  for (const auto& r : regions) {
    if (r.owner() != owner) throw ValidationError("region strategies disagree on the owner");
    if (r.num_vertices() != arena.size() || r.num_colors() != arena.num_colors())
      throw ValidationError("region strategy does not fit the arena");
  }
  // Only regions consulted at an owned vertex need their memory tracked.
  std::vector<int> slot(regions.size(), -1);
  std::vector<std::size_t> used;
  for (VertexId v = 0; v < arena.size(); ++v) {
    if (dispatch[v] >= regions.size())
      throw ValidationError("no region strategy for tag " + std::to_string(dispatch[v]));
    if (arena.owner(v) != owner || slot[dispatch[v]] >= 0) continue;
    slot[dispatch[v]] = static_cast<int>(used.size());
    used.push_back(dispatch[v]);
  }
  std::vector<MemoryId> start;
  for (auto r : used) start.push_back(regions[r].initial());
  auto [keys, delta] = explore_memory(start, arena.num_colors(), [&](const std::vector<MemoryId>& key, ColorId c) {
    std::vector<MemoryId> next(key.size());
    for (std::size_t i = 0; i < key.size(); ++i) next[i] = regions[used[i]].update(key[i], c);
    return next;
  });
  std::vector<VertexId> action(keys.size() * arena.size(), kNoVertex);
  for (MemoryId m = 0; m < keys.size(); ++m)
    for (VertexId v = 0; v < arena.size(); ++v)
      if (arena.owner(v) == owner) {
        const auto s = static_cast<std::size_t>(slot[dispatch[v]]);
        action[m * arena.size() + v] = regions[used[s]].action(keys[m][s], v);
      }
  return MooreStrategy::create(owner, arena, keys.size(), 0, std::move(delta), std::move(action));
}

MooreStrategy embed(const MooreStrategy& s, const SubArena& sub, const Arena& host) {
  return embed(s, sub.parent, host);
}

MooreStrategy embed(const MooreStrategy& s, std::span<const VertexId> parent, const Arena& host) {
  if (parent.size() != s.num_vertices()) throw ValidationError("parent map does not fit the strategy");
  if (s.num_colors() != host.num_colors()) throw ValidationError("strategy and host disagree on colors");
  std::vector<VertexId> local(host.size(), kNoVertex);
  for (VertexId v = 0; v < parent.size(); ++v) local[parent[v]] = v;
  std::vector<MemoryId> update(s.size() * s.num_colors());
  for (MemoryId m = 0; m < s.size(); ++m)
    for (ColorId c = 0; c < s.num_colors(); ++c) update[m * s.num_colors() + c] = s.update(m, c);
  std::vector<VertexId> action(s.size() * host.size(), kNoVertex);
  for (MemoryId m = 0; m < s.size(); ++m)
    for (VertexId h = 0; h < host.size(); ++h) {
      if (host.owner(h) != s.owner()) continue;
      action[m * host.size() + h] =
          local[h] == kNoVertex ? host.successors(h).front() : parent[s.action(m, local[h])];
    }
  return MooreStrategy::create(s.owner(), host, s.size(), s.initial(), std::move(update), std::move(action));
}

MooreStrategy lift_through_tracker(const MooreStrategy& s, const ProductArena& product,
                                   const Arena& base, const Tracker& tracker) {
  if (s.num_vertices() != product.size()) throw ValidationError("strategy does not fit the product");
  using Key = std::pair<StateId, MemoryId>;
  auto [keys, delta] = explore_memory(Key{tracker.dfa.initial(), s.initial()}, base.num_colors(),
                                      [&](const Key& k, ColorId c) {
                                        return Key{tracker.dfa.next(k.first, c), s.update(k.second, c)};
                                      });
  std::vector<VertexId> action(keys.size() * base.size(), kNoVertex);
  for (MemoryId m = 0; m < keys.size(); ++m) {
    const auto& tuple = tracker.tuples[keys[m].first];
    for (VertexId v = 0; v < base.size(); ++v) {
      if (base.owner(v) != s.owner()) continue;
      const auto p = product.find(ProductVertex{v, tuple});
      if (!p) throw InternalError("product lacks a vertex for a reachable tracker tuple");
      action[m * base.size() + v] = product.origin(s.action(keys[m].second, *p)).base;
    }
  }
  return MooreStrategy::create(s.owner(), base, keys.size(), 0, std::move(delta), std::move(action));
}

MooreStrategy stitch_regional(const Arena& base, const ProductArena& product, const Tracker& tracker,
                              std::span<const std::size_t> dispatch,
                              std::span<const MooreStrategy> regions) {
  return lift_through_tracker(stitch_regional(product.arena(), dispatch, regions), product, base, tracker);
}

MooreStrategy minimize(const MooreStrategy& s, const Arena& arena) {
  const auto colors = s.num_colors();
  const auto n = s.num_vertices();
  // Reachable memory states, breadth-first from the initial one.
  std::vector<MemoryId> order{s.initial()};
  constexpr auto kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(s.size(), kUnset);
  index[s.initial()] = 0;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (ColorId c = 0; c < colors; ++c) {
      const auto next = s.update(order[i], c);
      if (index[next] == kUnset) {
        index[next] = order.size();
        order.push_back(next);
      }
    }
  // Moore refinement: start from equal action rows, split by successor classes.
  const auto r = order.size();
  std::vector<std::size_t> cls(r);
  {
    std::map<std::vector<VertexId>, std::size_t> by_row;
    for (std::size_t i = 0; i < r; ++i) {
      std::vector<VertexId> row(n);
      for (VertexId v = 0; v < n; ++v) row[v] = s.action(order[i], v);
      cls[i] = by_row.emplace(std::move(row), by_row.size()).first->second;
    }
  }
  for (std::size_t classes = 0;;) {
    std::map<std::vector<std::size_t>, std::size_t> by_signature;
    std::vector<std::size_t> next(r);
    for (std::size_t i = 0; i < r; ++i) {
      std::vector<std::size_t> signature{cls[i]};
      for (ColorId c = 0; c < colors; ++c) signature.push_back(cls[index[s.update(order[i], c)]]);
      next[i] = by_signature.emplace(std::move(signature), by_signature.size()).first->second;
    }
    cls = std::move(next);
    if (by_signature.size() == classes) break;
    classes = by_signature.size();
  }
  const auto m = *std::max_element(cls.begin(), cls.end()) + 1;
  std::vector<MemoryId> update(m * colors);
  std::vector<VertexId> action(m * n, kNoVertex);
  for (std::size_t i = 0; i < r; ++i) {
    for (ColorId c = 0; c < colors; ++c)
      update[cls[i] * colors + c] = static_cast<MemoryId>(cls[index[s.update(order[i], c)]]);
    for (VertexId v = 0; v < n; ++v) action[cls[i] * n + v] = s.action(order[i], v);
  }
  return MooreStrategy::create(s.owner(), arena, m, static_cast<MemoryId>(cls[0]), std::move(update),
                               std::move(action));
}

std::string to_table(const MooreStrategy& s, const Arena& arena) {
  std::ostringstream out;
  out << "player " << player_number(s.owner()) << "\n";
  out << "memory " << s.size() << "\n";
  out << "initial " << s.initial() << "\n";
  for (MemoryId m = 0; m < s.size(); ++m)
    for (ColorId c = 0; c < s.num_colors(); ++c)
      out << "update " << m << " " << arena.registry()->name(c) << " " << s.update(m, c) << "\n";
  for (MemoryId m = 0; m < s.size(); ++m)
    for (VertexId v = 0; v < s.num_vertices(); ++v)
      if (s.owns(v)) out << "action " << m << " " << v << " " << s.action(m, v) << "\n";
  return out.str();
}

namespace {

std::uint32_t to_uint(const std::string& token, std::size_t line) {
  std::uint32_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size())
    throw ParseError("strategy line " + std::to_string(line) + ": expected a number, got '" + token + "'");
  return value;
}

}  // namespace

MooreStrategy parse_strategy_table(std::string_view text, const Arena& arena) {
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  std::optional<Player> owner;
  std::optional<std::size_t> memory;
  MemoryId initial = 0;
  std::vector<MemoryId> update;
  std::vector<VertexId> action;
  std::vector<std::uint8_t> seen_update, seen_action;
  const auto n = arena.size();
  const auto num_colors = arena.num_colors();
  auto need_memory = [&](std::size_t line) {
    if (!memory) throw ParseError("strategy line " + std::to_string(line) + ": 'memory' must come first");
  };
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream tokens(raw);
    std::vector<std::string> t;
    for (std::string tok; tokens >> tok;) t.push_back(tok);
    if (t.empty()) continue;
    const auto bad_arity = [&] {
      return ParseError("strategy line " + std::to_string(line_no) + ": malformed '" + t[0] + "' row");
    };
    if (t[0] == "player") {
      if (t.size() != 2) throw bad_arity();
      const auto p = to_uint(t[1], line_no);
      if (p != 1 && p != 2) throw ParseError("strategy line " + std::to_string(line_no) + ": player must be 1 or 2");
      owner = p == 1 ? Player::kOne : Player::kTwo;
    } else if (t[0] == "memory") {
      if (t.size() != 2) throw bad_arity();
      memory = to_uint(t[1], line_no);
      if (*memory == 0) throw ValidationError("strategy memory must be positive");
      update.assign(*memory * num_colors, 0);
      seen_update.assign(*memory * num_colors, 0);
      action.assign(*memory * n, kNoVertex);
      seen_action.assign(*memory * n, 0);
    } else if (t[0] == "initial") {
      if (t.size() != 2) throw bad_arity();
      initial = to_uint(t[1], line_no);
    } else if (t[0] == "update") {
      if (t.size() != 4) throw bad_arity();
      need_memory(line_no);
      const auto m = to_uint(t[1], line_no);
      const auto c = arena.registry()->find(t[2]);
      if (!c) throw ValidationError("strategy line " + std::to_string(line_no) + ": unknown color '" + t[2] + "'");
      const auto to = to_uint(t[3], line_no);
      if (m >= *memory || to >= *memory)
        throw ValidationError("strategy line " + std::to_string(line_no) + ": memory state out of range");
      update[m * num_colors + *c] = to;
      seen_update[m * num_colors + *c] = 1;
    } else if (t[0] == "action") {
      if (t.size() != 4) throw bad_arity();
      need_memory(line_no);
      const auto m = to_uint(t[1], line_no);
      const auto v = to_uint(t[2], line_no);
      const auto to = to_uint(t[3], line_no);
      if (m >= *memory) throw ValidationError("strategy line " + std::to_string(line_no) + ": memory state out of range");
      if (v >= n || to >= n) throw ValidationError("strategy line " + std::to_string(line_no) + ": vertex out of range");
      action[m * n + v] = to;
      seen_action[m * n + v] = 1;
    } else {
      throw ParseError("strategy line " + std::to_string(line_no) + ": unknown keyword '" + t[0] + "'");
    }
  }
  if (!owner) throw ParseError("strategy table lacks a 'player' line");
  if (!memory) throw ParseError("strategy table lacks a 'memory' line");
  for (MemoryId m = 0; m < *memory; ++m) {
    for (ColorId c = 0; c < num_colors; ++c)
      if (!seen_update[m * num_colors + c])
        throw ValidationError("update missing for memory " + std::to_string(m) + " and color " +
                              arena.registry()->name(c));
    for (VertexId v = 0; v < n; ++v)
      if (arena.owner(v) == *owner && !seen_action[m * n + v])
        throw ValidationError("action missing for memory " + std::to_string(m) + " at vertex " + std::to_string(v));
  }
  return MooreStrategy::create(*owner, arena, *memory, initial, std::move(update), std::move(action));
}

std::string to_dot(const MooreStrategy& s, const ColorRegistry& registry, std::string_view name) {
  std::ostringstream out;
  out << "digraph " << name << " {\n";
  for (MemoryId m = 0; m < s.size(); ++m)
    out << "  m" << m << " [label=\"m" << m << "\"" << (m == s.initial() ? ", shape=doublecircle" : "") << "];\n";
  for (MemoryId m = 0; m < s.size(); ++m) {
    std::map<MemoryId, std::string> labels;
    for (ColorId c = 0; c < s.num_colors(); ++c) {
      auto& label = labels[s.update(m, c)];
      if (!label.empty()) label += ",";
      label += registry.name(c);
    }
    for (const auto& [to, label] : labels)
      out << "  m" << m << " -> m" << to << " [label=\"" << label << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace regcomb
