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

#include "regcomb/condition.hpp"

#include <algorithm>
#include <charconv>
#include <set>

namespace regcomb {

bool is_el_formula(const Formula& f) {
  bool ok = true;
  f.for_each_atom([&](const Formula& a) { ok &= a.kind() == Formula::Kind::kInf; });
  return ok;
}

std::vector<ColorId> colors_of(const ElFormula& f) {
  std::set<ColorId> seen;
  f.for_each_atom([&](const Formula& a) {
    if (a.kind() == Formula::Kind::kInf) seen.insert(a.index());
  });
  return {seen.begin(), seen.end()};
}

AtomResolver el_resolver(const ColorRegistry& registry) {
  return [&registry](std::string_view ident, std::optional<std::string_view> arg) {
    if (ident != "Inf" || !arg) throw ParseError("expected Inf(color), got '" + std::string(ident) + "'");
    auto c = registry.find(*arg);
    if (!c) throw ParseError("unknown color '" + std::string(*arg) + "'");
    return Formula::inf(*c);
  };
}

ElFormula parse_el_formula(std::string_view text, const ColorRegistry& registry) {
  return parse_formula(text, el_resolver(registry));
}

std::string el_to_string(const ElFormula& f, const ColorRegistry& registry) {
  return f.to_string([&](const Formula& a) {
    if (a.kind() != Formula::Kind::kInf) return Formula(a).to_string();
    return "Inf(" + registry.name(a.index()) + ")";
  });
}

std::string to_string(const Lasso& lasso, const ColorRegistry& registry) {
  std::string out;
  for (auto c : lasso.stem) out += registry.name(c) + " ";
  out += "|";
  for (auto c : lasso.cycle) out += " " + registry.name(c);
  return out;
}

CombinedCondition::CombinedCondition(RegistryPtr registry, std::vector<ElFormula> el_atoms,
                                     std::vector<MonitorDfa> monitors, Formula formula)
    : registry_(std::move(registry)),
      el_atoms_(std::move(el_atoms)),
      monitors_(std::move(monitors)),
      formula_(std::move(formula)) {
  if (!registry_) throw ValidationError("combined condition without color registry");
  for (std::size_t i = 0; i < el_atoms_.size(); ++i) {
    if (!is_el_formula(el_atoms_[i]))
      throw ValidationError("W" + std::to_string(i + 1) + " is not an Emerson-Lei formula");
    for (auto c : colors_of(el_atoms_[i]))
      if (c >= registry_->size())
        throw ValidationError("W" + std::to_string(i + 1) + " mentions unregistered color #" +
                              std::to_string(c));
  }
  for (std::size_t i = 0; i < monitors_.size(); ++i) {
    if (!same_registry(monitors_[i].registry(), registry_))
      throw ValidationError("monitor " + std::to_string(i + 1) + " uses a different color registry");
    if (!monitors_[i].is_absorbing())
      throw ValidationError("monitor " + std::to_string(i + 1) + " is not absorbing");
  }
  formula_.for_each_atom([&](const Formula& a) {
    switch (a.kind()) {
      case Formula::Kind::kW:
        if (a.index() >= el_atoms_.size())
          throw ValidationError("formula mentions W" + std::to_string(a.index() + 1) + " but k = " +
                                std::to_string(el_atoms_.size()));
        break;
      case Formula::Kind::kR:
        if (a.index() >= monitors_.size())
          throw ValidationError("formula mentions R" + std::to_string(a.index() + 1) + " but l = " +
                                std::to_string(monitors_.size()));
        break;
      default: throw ValidationError("combined formula may only mention W and R variables");
    }
  });
}

ElFormula CombinedCondition::inline_el() const {
  return formula_.map_atoms([&](const Formula& a) {
    if (a.kind() != Formula::Kind::kW) throw InternalError("inline_el on a formula with R variables");
    return el_atoms_[a.index()];
  });
}

namespace {

std::optional<std::uint32_t> parse_index(std::string_view digits) {
  std::uint32_t value = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc{} || ptr != digits.data() + digits.size() || value == 0) return std::nullopt;
  return value - 1;
}

}  // namespace

AtomResolver combined_resolver(std::size_t k, std::size_t l) {
  return [k, l](std::string_view ident, std::optional<std::string_view> arg) {
    const std::string name(ident);
    if (!arg && ident.size() >= 2 && (ident[0] == 'W' || ident[0] == 'R')) {
      if (auto i = parse_index(ident.substr(1))) {
        if (ident[0] == 'W') {
          if (*i >= k) throw ParseError(name + " out of range (k = " + std::to_string(k) + ")");
          return Formula::w(*i);
        }
        if (*i >= l) throw ParseError(name + " out of range (l = " + std::to_string(l) + ")");
        return Formula::r(*i);
      }
    }
    throw ParseError("unknown variable '" + name + "'");
  };
}

AtomResolver mdbem_resolver(std::size_t p, std::size_t n, std::size_t m) {
  return [p, n, m](std::string_view ident, std::optional<std::string_view> arg) {
    const std::string name(ident);
    if (!arg && ident.size() >= 2) {
      if (auto i = parse_index(ident.substr(1))) {
        switch (ident[0]) {
          case 'x':
            if (*i < p) return Formula::w(*i);
            break;
          case 'y':
            if (*i < n) return Formula::r(*i);
            break;
          case 'z':
            if (*i < m) return Formula::r(static_cast<std::uint32_t>(n) + *i);
            break;
          default: break;
        }
        throw ParseError(name + " out of range (p = " + std::to_string(p) + ", n = " +
                         std::to_string(n) + ", m = " + std::to_string(m) + ")");
      }
    }
    throw ParseError("unknown variable '" + name + "'");
  };
}

ElFormula parity_to_el(std::span<const unsigned> priorities) {
  std::set<unsigned> present(priorities.begin(), priorities.end());
  std::vector<Formula> cases;
  for (auto d : present) {
    if (d % 2 != 0) continue;
    std::vector<Formula> seen_d;
    std::vector<Formula> parts;
    for (ColorId c = 0; c < priorities.size(); ++c) {
      if (priorities[c] == d) seen_d.push_back(Formula::inf(c));
      if (priorities[c] > d) parts.push_back(!Formula::inf(c));
    }
    parts.push_back(Formula::disj(std::move(seen_d)));
    cases.push_back(Formula::conj(std::move(parts)));
  }
  return Formula::disj(std::move(cases));
}

ElFormula muller_to_el(std::span<const std::vector<ColorId>> families, std::size_t num_colors) {
  std::vector<Formula> cases;
  for (const auto& family : families) {
    std::vector<bool> in(num_colors, false);
    for (auto c : family) {
      if (c >= num_colors) throw ValidationError("Muller set mentions unregistered color #" + std::to_string(c));
      in[c] = true;
    }
    std::vector<Formula> parts;
    for (ColorId c = 0; c < num_colors; ++c)
      parts.push_back(in[c] ? Formula::inf(c) : !Formula::inf(c));
    cases.push_back(Formula::conj(std::move(parts)));
  }
  return Formula::disj(std::move(cases));
}

bool eval_el_lasso(const ElFormula& f, const Lasso& lasso) {
  if (lasso.cycle.empty()) throw ValidationError("lasso cycle must be nonempty");
  return f.eval([&](const Formula& a) {
    if (a.kind() != Formula::Kind::kInf) throw ValidationError("not an Emerson-Lei formula");
    return std::find(lasso.cycle.begin(), lasso.cycle.end(), a.index()) != lasso.cycle.end();
  });
}

bool monitor_avoids(const MonitorDfa& monitor, const Lasso& lasso) {
  if (lasso.cycle.empty()) throw ValidationError("lasso cycle must be nonempty");
  StateId q = monitor.initial();
  if (monitor.is_final(q)) return false;
  auto step = [&](ColorId c) {
    q = monitor.next(q, c);
    return !monitor.is_final(q);
  };
  for (auto c : lasso.stem)
    if (!step(c)) return false;
  std::vector<bool> boundary(monitor.num_states(), false);
  while (!boundary[q]) {
    boundary[q] = true;
    for (auto c : lasso.cycle)
      if (!step(c)) return false;
  }
  return true;
}

bool eval_combined_lasso(const CombinedCondition& condition, const Lasso& lasso) {
  return condition.formula().eval([&](const Formula& a) {
    if (a.kind() == Formula::Kind::kW) return eval_el_lasso(condition.el_atoms()[a.index()], lasso);
    return monitor_avoids(condition.monitors()[a.index()], lasso);
  });
}

CombinedCondition specialize_formula(const CombinedCondition& condition, std::size_t reg_index,
                                     bool value) {
  if (reg_index >= condition.l())
    throw ValidationError("regular variable R" + std::to_string(reg_index + 1) +
                          " out of range (l = " + std::to_string(condition.l()) + ")");
  const auto i = static_cast<std::uint32_t>(reg_index);
  auto formula = condition.formula().map_atoms([&](const Formula& a) {
    if (a.kind() != Formula::Kind::kR) return a;
    if (a.index() == i) return Formula::constant(value);
    return a.index() > i ? Formula::r(a.index() - 1) : a;
  });
  auto monitors = condition.monitors();
  monitors.erase(monitors.begin() + static_cast<std::ptrdiff_t>(reg_index));
  return CombinedCondition(condition.registry(), condition.el_atoms(), std::move(monitors),
                           std::move(formula));
}

MdbemGame compile_mdbem(const MdbemSpec& spec) {
  const auto n = spec.battery_dims;
  const auto m = spec.spillover_dims;
  const auto num_vertices = spec.owners.size();
  if (!spec.vertex_names || spec.vertex_names->size() != num_vertices)
    throw ValidationError("need exactly one name per vertex");
  if (spec.successors.size() != num_vertices || spec.weights.size() != num_vertices)
    throw ValidationError("successor and weight lists must cover every vertex");
  for (VertexId v = 0; v < num_vertices; ++v)
    if (spec.weights[v].size() != n + m)
      throw ValidationError("vertex " + spec.vertex_names->name(v) + " has " +
                            std::to_string(spec.weights[v].size()) + " weights, expected " +
                            std::to_string(n + m));
  if (spec.bounds.size() != n + m)
    throw ValidationError("expected " + std::to_string(n + m) + " bounds");
  for (auto b : spec.bounds)
    if (b < 0) throw ValidationError("bounds must be non-negative");
  if (!spec.initial_levels.empty() && spec.initial_levels.size() != n + m)
    throw ValidationError("expected " + std::to_string(n + m) + " initial levels");

  std::vector<ColorId> identity(num_vertices);
  for (VertexId v = 0; v < num_vertices; ++v) identity[v] = v;
  auto arena = Arena::build(spec.vertex_names, spec.owners, identity, spec.successors);

  std::vector<MonitorDfa> monitors;
  for (std::size_t d = 0; d < n + m; ++d) {
    std::vector<long> projection(num_vertices);
    for (VertexId v = 0; v < num_vertices; ++v) projection[v] = spec.weights[v][d];
    EnergyOptions options;
    if (!spec.initial_levels.empty()) options.initial_level = spec.initial_levels[d];
    WeightMap weights(std::move(projection));
    monitors.push_back(d < n ? compile_battery_energy(spec.vertex_names, weights, spec.bounds[d], options)
                             : compile_spillover_energy(spec.vertex_names, weights, spec.bounds[d], options));
  }

  std::vector<ElFormula> atoms;
  for (const auto& set : spec.muller_sets) {
    std::vector<std::vector<ColorId>> family{set};
    atoms.push_back(muller_to_el(family, num_vertices));
  }
  CombinedCondition condition(spec.vertex_names, std::move(atoms), std::move(monitors), spec.formula);
  return {std::move(arena), std::move(condition)};
}

}  // namespace regcomb
