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

#include "regcomb_tools/game_file.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace regcomb::tools {

using nlohmann::json;

namespace {

[[noreturn]] void invalid(const std::string& what) { throw ValidationError("game file: " + what); }

const json& require(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) invalid(where + " must be an object");
  auto it = obj.find(key);
  if (it == obj.end()) invalid(where + " is missing '" + key + "'");
  return *it;
}

long as_long(const json& j, const std::string& where) {
  if (!j.is_number_integer()) invalid(where + " must be an integer");
  return j.get<long>();
}

std::string as_string(const json& j, const std::string& where) {
  if (!j.is_string()) invalid(where + " must be a string");
  return j.get<std::string>();
}

const json& as_array(const json& j, const std::string& where) {
  if (!j.is_array()) invalid(where + " must be an array");
  return j;
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

long parse_long(std::string_view text, const std::string& what) {
  long value = 0;
  const char* first = text.data();
  if (!text.empty() && text.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || first == text.data() + text.size())
    throw ParseError(what + ": expected an integer, got '" + std::string(text) + "'");
  return value;
}

struct VertexRow {
  VertexId id;
  Player owner;
  std::optional<std::string> color;
  std::vector<long> weights;
  std::string name;
};

std::vector<VertexRow> read_vertices(const json& root) {
  std::vector<VertexRow> rows;
  const auto& list = as_array(require(root, "vertices", "game"), "vertices");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto& v = list[i];
    const auto where = "vertices[" + std::to_string(i) + "]";
    VertexRow row;
    const auto id = as_long(require(v, "id", where), where + ".id");
    if (id < 0) invalid(where + ".id must be non-negative");
    row.id = static_cast<VertexId>(id);
    const auto owner = as_long(require(v, "owner", where), where + ".owner");
    if (owner != 1 && owner != 2) invalid(where + ".owner must be 1 or 2");
    row.owner = owner == 1 ? Player::kOne : Player::kTwo;
    if (v.contains("color")) row.color = as_string(v["color"], where + ".color");
    if (v.contains("weights"))
      for (const auto& w : as_array(v["weights"], where + ".weights")) row.weights.push_back(as_long(w, where + ".weights"));
    row.name = v.contains("name") ? as_string(v["name"], where + ".name") : std::to_string(row.id);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<Edge> read_edges(const json& root) {
  std::vector<Edge> edges;
  const auto& list = as_array(require(root, "edges", "game"), "edges");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto where = "edges[" + std::to_string(i) + "]";
    const auto& e = as_array(list[i], where);
    if (e.size() != 2) invalid(where + " must be a pair");
    const auto from = as_long(e[0], where);
    const auto to = as_long(e[1], where);
    if (from < 0 || to < 0) invalid(where + " has a negative endpoint");
    edges.push_back({static_cast<VertexId>(from), static_cast<VertexId>(to)});
  }
  return edges;
}

Arena build_arena(const std::vector<VertexRow>& rows, const std::vector<Edge>& edges, RegistryPtr registry,
                  bool color_is_vertex) {
  ArenaDescription d;
  for (const auto& row : rows) {
    (row.owner == Player::kOne ? d.player1 : d.player2).push_back(row.id);
    if (color_is_vertex) {
      d.coloring.emplace_back(row.id, row.id);
    } else {
      if (!row.color) invalid("vertex " + row.name + " has no color");
      auto c = registry->find(*row.color);
      if (!c) invalid("vertex " + row.name + " has unknown color '" + *row.color + "'");
      d.coloring.emplace_back(row.id, *c);
    }
  }
  d.edges = edges;
  try {
    return Arena::from_description(d, std::move(registry));
  } catch (const ArenaValidationError& e) {
    invalid(e.what());
  }
}

/// Weight per color taken from dimension `dim` of the vertex weight vectors.
WeightMap weights_from_vertices(const ColorRegistry& registry, const std::vector<VertexRow>& rows, std::size_t dim) {
  std::vector<std::optional<long>> per_color(registry.size());
  for (const auto& row : rows) {
    if (dim >= row.weights.size()) invalid("vertex " + row.name + " has no weight in dimension " + std::to_string(dim));
    const auto c = registry.at(*row.color);
    if (per_color[c] && *per_color[c] != row.weights[dim])
      invalid("color " + registry.name(c) + " carries different weights in dimension " + std::to_string(dim));
    per_color[c] = row.weights[dim];
  }
  std::vector<long> out;
  for (auto w : per_color) out.push_back(w.value_or(0));
  return WeightMap(std::move(out));
}

/// Inline monitor. A transition row with color "*" covers every color the
/// state has no explicit row for.
MonitorDfa read_inline_monitor(RegistryPtr registry, const json& m, const std::string& where) {
  const auto states = as_long(require(m, "states", where), where + ".states");
  std::ostringstream table;
  table << "states " << states << "\n";
  table << "initial " << (m.contains("initial") ? as_long(m["initial"], where + ".initial") : 0) << "\n";
  table << "final";
  if (m.contains("final"))
    for (const auto& f : as_array(m["final"], where + ".final")) table << " " << as_long(f, where + ".final");
  table << "\n";
  std::map<std::string, std::set<std::string>> explicit_colors;
  std::vector<std::pair<std::string, std::string>> wildcards;
  for (const auto& row : as_array(require(m, "transitions", where), where + ".transitions")) {
    auto text = as_string(row, where + ".transitions");
    std::istringstream tokens(text);
    std::string from, color;
    tokens >> from >> color;
    if (color == "*") {
      std::string rest;
      std::getline(tokens, rest);
      wildcards.emplace_back(from, rest);
      continue;
    }
    explicit_colors[from].insert(color);
    table << text << "\n";
  }
  for (const auto& [from, rest] : wildcards)
    for (const auto& name : registry->names())
      if (!explicit_colors[from].contains(name)) table << from << " " << name << " " << rest << "\n";
  auto dfa = parse_table(registry, table.str());
  return dfa.is_absorbing() ? dfa : make_absorbing(dfa);
}

WeightMap read_weight_object(const ColorRegistry& registry, const json& obj, const std::string& where) {
  if (!obj.is_object()) invalid(where + " must be an object");
  std::vector<long> weights(registry.size(), 0);
  for (const auto& [name, value] : obj.items()) {
    auto c = registry.find(name);
    if (!c) invalid(where + " names unknown color '" + name + "'");
    weights[*c] = as_long(value, where + "." + name);
  }
  return WeightMap(std::move(weights));
}

MonitorDfa read_monitor(RegistryPtr registry, const json& m, const std::vector<VertexRow>& rows,
                        const std::string& where) {
  if (!m.is_object()) invalid(where + " must be an object");
  if (!m.contains("compile")) return read_inline_monitor(registry, m, where);
  auto directive = as_string(m["compile"], where + ".compile");
  std::optional<WeightMap> weights;
  if (m.contains("weights")) {
    weights = read_weight_object(*registry, m["weights"], where + ".weights");
  } else {
    // "dim=N" selects a dimension of the vertex weight vectors.
    std::vector<std::string> kept;
    for (const auto& word : split(directive, ' ')) {
      if (word.rfind("dim=", 0) == 0) {
        const auto dim = parse_long(word.substr(4), where + ".compile");
        if (dim < 0) invalid(where + ": negative dimension");
        weights = weights_from_vertices(*registry, rows, static_cast<std::size_t>(dim));
      } else {
        kept.push_back(word);
      }
    }
    directive.clear();
    for (const auto& word : kept) directive += (directive.empty() ? "" : " ") + word;
  }
  return compile_directive(registry, directive, weights);
}

GameFile read_plain(const json& root, const std::vector<VertexRow>& rows, const std::vector<Edge>& edges) {
  std::vector<std::string> names;
  for (const auto& c : as_array(require(root, "colors", "game"), "colors")) names.push_back(as_string(c, "colors"));
  if (names.empty()) invalid("colors must not be empty");
  auto registry = make_registry(std::move(names));
  auto arena = build_arena(rows, edges, registry, false);

  const auto& cond = require(root, "condition", "game");
  std::vector<ElFormula> atoms;
  if (cond.contains("el_atoms"))
    for (const auto& a : as_array(cond["el_atoms"], "condition.el_atoms"))
      atoms.push_back(parse_el_formula(as_string(a, "condition.el_atoms"), *registry));
  std::vector<MonitorDfa> monitors;
  if (cond.contains("monitors")) {
    const auto& list = as_array(cond["monitors"], "condition.monitors");
    for (std::size_t i = 0; i < list.size(); ++i)
      monitors.push_back(read_monitor(registry, list[i], rows, "condition.monitors[" + std::to_string(i) + "]"));
  }
  const auto text = as_string(require(cond, "formula", "condition"), "condition.formula");
  auto formula = parse_formula(text, combined_resolver(atoms.size(), monitors.size()));

  std::vector<std::string> labels(arena.size());
  for (const auto& row : rows) labels[row.id] = row.name;
  return {std::move(arena), CombinedCondition(registry, std::move(atoms), std::move(monitors), std::move(formula)),
          std::move(labels)};
}

GameFile read_mdbem(const json& root, const std::vector<VertexRow>& rows, const std::vector<Edge>& edges) {
  if (root.contains("colors") || root.contains("condition"))
    invalid("an mdbem game takes its colors and condition from the mdbem block");
  const auto& block = root["mdbem"];
  std::vector<std::string> names(rows.size());
  for (const auto& row : rows) {
    if (row.id >= rows.size()) invalid("vertex ids must be 0.." + std::to_string(rows.size() - 1));
    names[row.id] = row.name;
  }
  auto registry = make_registry(names);
  auto arena = build_arena(rows, edges, registry, true);

  MdbemSpec spec;
  spec.vertex_names = registry;
  spec.battery_dims = block.contains("battery") ? static_cast<std::size_t>(as_long(block["battery"], "mdbem.battery")) : 0;
  spec.spillover_dims =
      block.contains("spillover") ? static_cast<std::size_t>(as_long(block["spillover"], "mdbem.spillover")) : 0;
  spec.owners.resize(arena.size());
  spec.successors.resize(arena.size());
  spec.weights.resize(arena.size());
  for (VertexId v = 0; v < arena.size(); ++v) {
    spec.owners[v] = arena.owner(v);
    spec.successors[v].assign(arena.successors(v).begin(), arena.successors(v).end());
  }
  for (const auto& row : rows) spec.weights[row.id] = row.weights;
  for (const auto& b : as_array(require(block, "bounds", "mdbem"), "mdbem.bounds"))
    spec.bounds.push_back(as_long(b, "mdbem.bounds"));
  if (block.contains("initial_levels"))
    for (const auto& b : as_array(block["initial_levels"], "mdbem.initial_levels"))
      spec.initial_levels.push_back(as_long(b, "mdbem.initial_levels"));
  for (const auto& set : as_array(require(block, "muller", "mdbem"), "mdbem.muller")) {
    std::vector<VertexId> members;
    for (const auto& v : as_array(set, "mdbem.muller")) {
      if (v.is_string()) {
        auto c = registry->find(v.get<std::string>());
        if (!c) invalid("mdbem.muller names unknown vertex '" + v.get<std::string>() + "'");
        members.push_back(*c);
      } else {
        const auto id = as_long(v, "mdbem.muller");
        if (id < 0 || static_cast<std::size_t>(id) >= arena.size()) invalid("mdbem.muller has unknown vertex " + std::to_string(id));
        members.push_back(static_cast<VertexId>(id));
      }
    }
    spec.muller_sets.push_back(std::move(members));
  }
  spec.formula = parse_formula(as_string(require(block, "formula", "mdbem"), "mdbem.formula"),
                               mdbem_resolver(spec.muller_sets.size(), spec.battery_dims, spec.spillover_dims));
  auto game = compile_mdbem(spec);
  return {std::move(game.arena), std::move(game.condition), std::move(names)};
}

}  // namespace

GameFile parse_game_file(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("game file: ") + e.what());
  }
  if (!root.is_object()) invalid("top level must be an object");
  const auto rows = read_vertices(root);
  const auto edges = read_edges(root);
  return root.contains("mdbem") ? read_mdbem(root, rows, edges) : read_plain(root, rows, edges);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

GameFile load_game_file(const std::filesystem::path& path) { return parse_game_file(read_file(path)); }

WeightMap parse_weight_list(const ColorRegistry& registry, std::string_view text) {
  std::vector<long> weights(registry.size(), 0);
  for (const auto& item : split(text, ',')) {
    const auto entry = trim(item);
    if (entry.empty()) continue;
    const auto eq = entry.find('=');
    if (eq == std::string::npos) throw ParseError("weights: expected color=value, got '" + entry + "'");
    weights[registry.at(trim(entry.substr(0, eq)))] = parse_long(trim(entry.substr(eq + 1)), "weights");
  }
  return WeightMap(std::move(weights));
}

MonitorDfa compile_directive(RegistryPtr registry, std::string_view directive,
                             const std::optional<WeightMap>& weights) {
  std::istringstream words{std::string(directive)};
  std::string kind;
  if (!(words >> kind)) throw ParseError("empty compile directive");
  std::map<std::string, std::string> args;
  for (std::string word; words >> word;) {
    const auto eq = word.find('=');
    if (eq == std::string::npos) throw ParseError("directive argument '" + word + "' is not key=value");
    args[word.substr(0, eq)] = word.substr(eq + 1);
  }
  auto take = [&](const std::string& key) -> std::optional<std::string> {
    auto it = args.find(key);
    if (it == args.end()) return std::nullopt;
    auto value = it->second;
    args.erase(it);
    return value;
  };
  auto need_weights = [&]() -> const WeightMap& {
    if (!weights) throw ValidationError("'" + kind + "' needs weights");
    if (weights->size() != registry->size()) throw ValidationError("weights must cover every color");
    return *weights;
  };
  auto colors_arg = [&] {
    auto list = take("colors");
    if (!list) throw ParseError("'" + kind + "' needs colors=...");
    std::vector<ColorId> colors;
    for (const auto& name : split(*list, ',')) colors.push_back(registry->at(trim(name)));
    return colors;
  };

  std::optional<MonitorDfa> out;
  if (kind == "battery" || kind == "spillover") {
    auto b = take("b");
    if (!b) throw ParseError("'" + kind + "' needs b=...");
    EnergyOptions options;
    if (auto init = take("init")) options.initial_level = parse_long(*init, kind + " init");
    if (auto low = take("low")) options.lower_bound = parse_long(*low, kind + " low");
    const auto upper = parse_long(*b, kind + " b");
    out = kind == "battery" ? compile_battery_energy(registry, need_weights(), upper, options)
                            : compile_spillover_energy(registry, need_weights(), upper, options);
  } else if (kind == "window") {
    auto l = take("l");
    if (!l) throw ParseError("'window' needs l=...");
    const auto length = parse_long(*l, "window l");
    if (length <= 0) throw ValidationError("window length must be positive");
    out = compile_window(registry, need_weights(), static_cast<std::size_t>(length));
  } else if (kind == "safety") {
    out = compile_color_safety(registry, colors_arg());
  } else if (kind == "reach") {
    out = compile_color_reach(registry, colors_arg());
  } else {
    throw ParseError("unknown compile directive '" + kind + "'");
  }
  if (!args.empty()) throw ParseError("'" + kind + "' does not take " + args.begin()->first + "=");
  return *out;
}

}  // namespace regcomb::tools
