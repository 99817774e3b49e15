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

#include "regcomb_tools/cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "regcomb/bounds.hpp"
#include "regcomb/combiner.hpp"
#include "regcomb/oracle.hpp"
#include "regcomb/random_instances.hpp"
#include "regcomb_tools/game_file.hpp"

namespace regcomb::tools {

namespace {

std::string label(const GameFile& game, const ProductVertex& pv) {
  std::string out = game.vertex_names[pv.base];
  if (pv.states.empty()) return out;
  out += " (";
  for (std::size_t i = 0; i < pv.states.size(); ++i) out += (i ? "," : "") + std::to_string(pv.states[i]);
  return out + ")";
}

VertexId resolve_vertex(const GameFile& game, const std::string& text) {
  for (VertexId v = 0; v < game.vertex_names.size(); ++v)
    if (game.vertex_names[v] == text) return v;
  VertexId v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || v >= game.arena.size())
    throw ValidationError("unknown vertex '" + text + "'");
  return v;
}

std::vector<ColorId> parse_colors(const ColorRegistry& registry, const std::string& text) {
  std::vector<ColorId> out;
  std::istringstream words(text);
  for (std::string w; words >> w;) out.push_back(registry.at(w));
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ValidationError("cannot write " + path);
  file << text;
}

/// Product vertices where the two tables disagree, as printable lines.
std::vector<std::string> winner_diff(const GameFile& game, const SolveResult& solved, const OracleResult& oracle) {
  std::vector<std::string> diff;
  for (VertexId x = 0; x < solved.product.size(); ++x) {
    const auto& pv = solved.product.origin(x);
    const auto other = oracle.product.find(pv);
    if (!other) {
      diff.push_back(label(game, pv) + ": missing from the oracle product");
      continue;
    }
    if (solved.winner[x] != oracle.winner[*other])
      diff.push_back(label(game, pv) + ": solve " + to_string(solved.winner[x]) + ", oracle " +
                     to_string(oracle.winner[*other]));
  }
  if (oracle.product.size() != solved.product.size())
    diff.push_back("product sizes differ: solve " + std::to_string(solved.product.size()) + ", oracle " +
                   std::to_string(oracle.product.size()));
  return diff;
}

struct SolveFlags {
  std::string game;
  std::string fast_path = "auto";
  std::string emit_strategy;
  std::string strategy_out;
  bool emit_winners = false;
  bool stats = false;
};

int cmd_solve(const SolveFlags& flags, std::ostream& out) {
  const auto game = load_game_file(flags.game);
  SolveOptions options;
  options.fast_path = flags.fast_path == "off" ? FastPath::kOff : FastPath::kAuto;
  const auto result = solve_combined(game.arena, game.condition, options);

  out << "# path " << result.path << ", " << result.product.size() << " product vertices\n";
  const auto& initial = result.tracker.tuples.front();
  for (VertexId x = 0; x < result.product.size(); ++x) {
    const auto& pv = result.product.origin(x);
    if (flags.emit_winners || pv.states == initial) out << label(game, pv) << " " << to_string(result.winner[x]) << "\n";
  }
  if (flags.stats)
    for (const auto& level : result.levels)
      out << "# level depth=" << level.depth << " vertices=" << level.vertices << " p1_memory=" << level.p1_memory
          << " p2_memory=" << level.p2_memory << " lar=" << level.lar_states << " formula=" << level.formula << "\n";

  // --strategy-out alone writes tables.
  if (!flags.emit_strategy.empty() || !flags.strategy_out.empty()) {
    const bool dot = flags.emit_strategy == "dot";
    for (const auto* s : {&result.profile.p1, &result.profile.p2}) {
      const auto tag = "p" + std::to_string(player_number(s->owner()));
      const auto text = dot ? to_dot(*s, *game.arena.registry(), "strategy_" + tag) : to_table(*s, game.arena);
      if (flags.strategy_out.empty()) {
        out << "# strategy " << to_string(s->owner()) << "\n" << text;
      } else {
        const auto path = flags.strategy_out + "." + tag + (dot ? ".dot" : ".table");
        write_text(path, text);
        out << "# wrote " << path << "\n";
      }
    }
  }
  return kExitOk;
}

struct OracleFlags {
  std::string game;
  std::size_t random = 0;
  std::uint64_t seed = 1;
  bool inject_fault = false;
};

int cmd_oracle_check(const OracleFlags& flags, std::ostream& out, std::ostream& err) {
  if (flags.random > 0) {
    Rng rng(flags.seed);
    std::size_t mismatches = 0;
    for (std::size_t i = 0; i < flags.random; ++i) {
      const auto inst = random_instance(rng);
      auto solved = solve_combined(inst.arena, inst.condition);
      if (flags.inject_fault && i == 0) solved.winner[0] = opponent(solved.winner[0]);
      const auto oracle = oracle_solve(inst.arena, inst.condition);
      GameFile game{inst.arena, inst.condition, {}};
      for (VertexId v = 0; v < inst.arena.size(); ++v) game.vertex_names.push_back(std::to_string(v));
      const auto diff = winner_diff(game, solved, oracle);
      if (!diff.empty()) {
        ++mismatches;
        err << "instance " << i << ":\n";
        for (const auto& line : diff) err << "  " << line << "\n";
      }
    }
    out << "random " << flags.random << " seed " << flags.seed << ": " << mismatches << " mismatches\n";
    return mismatches == 0 ? kExitOk : kExitFailure;
  }
  if (flags.game.empty()) throw CLI::RequiredError("a game file or --random");
  const auto game = load_game_file(flags.game);
  auto solved = solve_combined(game.arena, game.condition);
  if (flags.inject_fault) solved.winner[0] = opponent(solved.winner[0]);
  const auto oracle = oracle_solve(game.arena, game.condition);
  const auto diff = winner_diff(game, solved, oracle);
  if (!diff.empty()) {
    out << "mismatch in " << diff.size() << " of " << solved.product.size() << " configurations\n";
    for (const auto& line : diff) out << line << "\n";
    return kExitFailure;
  }
  out << "agree on " << solved.product.size() << " configurations (path " << solved.path << ")\n";
  return kExitOk;
}

struct VerifyFlags {
  std::string game;
  std::string strategy;
  int player = 1;
};

int cmd_verify(const VerifyFlags& flags, std::ostream& out) {
  const auto game = load_game_file(flags.game);
  const auto strategy = parse_strategy_table(read_file(flags.strategy), game.arena);
  const auto player = flags.player == 1 ? Player::kOne : Player::kTwo;
  if (strategy.owner() != player)
    throw ValidationError("strategy file is for " + to_string(strategy.owner()) + ", not " + to_string(player));
  // Claims come from the monolithic oracle, independent of the solver that
  // produced the strategy.
  const auto oracle = oracle_solve(game.arena, game.condition);
  std::vector<ProductVertex> claimed;
  for (VertexId x = 0; x < oracle.product.size(); ++x)
    if (oracle.winner[x] == player) claimed.push_back(oracle.product.origin(x));
  const auto report = verify_strategy(game.arena, game.condition, strategy, claimed);
  if (report.passed) {
    out << "pass: " << claimed.size() << " claimed configurations, " << report.configurations << " checked\n";
    return kExitOk;
  }
  out << "fail at " << label(game, *report.failing_vertex) << "\n";
  if (report.counterexample)
    out << "counterexample: " << to_string(*report.counterexample, *game.arena.registry()) << "\n";
  return kExitFailure;
}

struct BoundFlags {
  unsigned l = 0;
  std::string n, m = "1", k, v;
  std::string base = "1";
  std::string base_table;
  bool switching = false;
};

BigInt parse_big(const std::string& text, const char* flag) {
  BigInt value;
  if (text.empty() || value.set_str(text, 10) != 0 || value < 0)
    throw CLI::ValidationError(flag, "expected a non-negative integer, got '" + text + "'");
  return value;
}

int cmd_bound(const BoundFlags& flags, std::ostream& out) {
  if (flags.switching) {
    if (flags.k.empty() || flags.v.empty()) throw CLI::RequiredError("--switching needs --k and --v");
    out << switching_bound(BigInt(flags.l), parse_big(flags.k, "--k"), parse_big(flags.v, "--v")).get_str() << "\n";
    return kExitOk;
  }
  if (flags.n.empty()) throw CLI::RequiredError("--n");
  BaseSizeFn base;
  if (!flags.base_table.empty()) {
    // "n:size,...", with "*:size" as the fallback entry.
    std::map<BigInt, BigInt> table;
    std::optional<BigInt> fallback;
    std::istringstream items(flags.base_table);
    for (std::string item; std::getline(items, item, ',');) {
      const auto colon = item.find(':');
      if (colon == std::string::npos) throw CLI::ValidationError("--base-table", "expected n:size, got '" + item + "'");
      const auto key = item.substr(0, colon);
      const auto size = parse_big(item.substr(colon + 1), "--base-table");
      if (key == "*")
        fallback = size;
      else
        table[parse_big(key, "--base-table")] = size;
    }
    base = [table, fallback](const BigInt& n) {
      auto it = table.find(n);
      if (it != table.end()) return it->second;
      if (fallback) return *fallback;
      throw ValidationError("--base-table has no entry for n=" + n.get_str());
    };
  } else {
    const auto constant = parse_big(flags.base, "--base");
    base = [constant](const BigInt&) { return constant; };
  }
  out << memory_bound(flags.l, parse_big(flags.n, "--n"), parse_big(flags.m, "--m"), base).get_str() << "\n";
  return kExitOk;
}

struct CompileFlags {
  std::string directive;
  std::string weights;
  std::string colors;
};

int cmd_compile(const CompileFlags& flags, std::ostream& out) {
  std::vector<std::string> names;
  auto add = [&](std::string name) {
    if (!name.empty() && std::find(names.begin(), names.end(), name) == names.end()) names.push_back(std::move(name));
  };
  std::istringstream color_list(flags.colors);
  for (std::string c; std::getline(color_list, c, ',');) add(c);
  std::istringstream weight_list(flags.weights);
  for (std::string item; std::getline(weight_list, item, ',');) add(item.substr(0, item.find('=')));
  if (names.empty()) throw CLI::RequiredError("--colors or --weights");
  auto registry = make_registry(std::move(names));
  std::optional<WeightMap> weights;
  if (!flags.weights.empty()) weights = parse_weight_list(*registry, flags.weights);
  out << to_table(compile_directive(registry, flags.directive, weights));
  return kExitOk;
}

struct SimulateFlags {
  std::string game;
  std::string p1, p2;
  std::string start = "0";
  std::string prefix;
  std::size_t steps = 0;
};

int cmd_simulate(const SimulateFlags& flags, std::ostream& out) {
  const auto game = load_game_file(flags.game);
  auto load = [&](const std::string& path, Player p) {
    if (path.empty()) return MooreStrategy::positional(p, game.arena, std::vector<VertexId>(game.arena.size(), kNoVertex));
    auto s = parse_strategy_table(read_file(path), game.arena);
    if (s.owner() != p) throw ValidationError(path + " is a strategy for " + to_string(s.owner()));
    return s;
  };
  const StrategyProfile profile{load(flags.p1, Player::kOne), load(flags.p2, Player::kTwo)};
  const auto start = resolve_vertex(game, flags.start);
  const auto prefix = parse_colors(*game.arena.registry(), flags.prefix);
  out << to_string(simulate_to_lasso(profile, game.arena, start, prefix), *game.arena.registry()) << "\n";
  if (flags.steps > 0) {
    out << "vertices:";
    for (auto v : simulate_vertices(profile, game.arena, start, prefix, flags.steps)) out << " " << game.vertex_names[v];
    out << "\n";
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Solver for games with Emerson-Lei and regular objectives", "regcomb"};
  app.require_subcommand(1);

  SolveFlags solve;
  auto* solve_cmd = app.add_subcommand("solve", "Solve a game file and print winners");
  solve_cmd->add_option("game", solve.game, "Game file (JSON)")->required();
  solve_cmd->add_option("--fast-path", solve.fast_path, "Use the single-monitor fast paths")
      ->check(CLI::IsMember({"auto", "off"}));
  solve_cmd->add_option("--emit-strategy", solve.emit_strategy, "Print or write both strategies")
      ->check(CLI::IsMember({"table", "dot"}));
  solve_cmd->add_option("--strategy-out", solve.strategy_out, "Write strategies to PREFIX.p1.* and PREFIX.p2.*");
  solve_cmd->add_flag("--emit-winners", solve.emit_winners, "Winner for every vertex and monitor-state tuple");
  solve_cmd->add_flag("--stats", solve.stats, "Per-level recursion statistics");

  OracleFlags oracle;
  auto* oracle_cmd = app.add_subcommand("oracle-check", "Compare the solver against the monolithic reduction");
  oracle_cmd->add_option("game", oracle.game, "Game file (JSON)");
  oracle_cmd->add_option("--random", oracle.random, "Check this many random instances instead");
  oracle_cmd->add_option("--seed", oracle.seed, "Seed for --random");
  oracle_cmd->add_flag("--inject-fault", oracle.inject_fault, "Flip one solver answer (tests only)")->group("");

  VerifyFlags verify;
  auto* verify_cmd = app.add_subcommand("verify", "Check a strategy table on the owner's winning region");
  verify_cmd->add_option("game", verify.game, "Game file (JSON)")->required();
  verify_cmd->add_option("strategy", verify.strategy, "Strategy table")->required();
  verify_cmd->add_option("--player", verify.player, "Owner of the strategy")->required()->check(CLI::IsMember({1, 2}));

  BoundFlags bound;
  auto* bound_cmd = app.add_subcommand("bound", "Memory bound of the recursion, or the switching bound");
  bound_cmd->add_option("--l", bound.l, "Number of regular atoms")->required();
  bound_cmd->add_option("--n", bound.n, "Arena size");
  bound_cmd->add_option("--m", bound.m, "Largest monitor size");
  auto* base_opt = bound_cmd->add_option("--base", bound.base, "Constant memory of the base condition");
  bound_cmd->add_option("--base-table", bound.base_table, "Base memory per arena size, \"n:size,...,*:size\"")
      ->excludes(base_opt);
  bound_cmd->add_flag("--switching", bound.switching, "Print (2lk)^((kv)^(kv)) instead");
  bound_cmd->add_option("--k", bound.k, "Number of objectives (with --switching)");
  bound_cmd->add_option("--v", bound.v, "Number of vertices (with --switching)");

  CompileFlags compile;
  auto* compile_cmd = app.add_subcommand("compile", "Compile a condition directive to a monitor table");
  compile_cmd->add_option("directive", compile.directive, "e.g. \"battery b=2\"")->required();
  compile_cmd->add_option("--weights", compile.weights, "Per-color weights, \"p=1,m=-1\"");
  compile_cmd->add_option("--colors", compile.colors, "Color list, \"a,b\"");

  SimulateFlags simulate;
  auto* simulate_cmd = app.add_subcommand("simulate", "Play two strategies against each other");
  simulate_cmd->add_option("game", simulate.game, "Game file (JSON)")->required();
  simulate_cmd->add_option("--p1", simulate.p1, "P1 strategy table (default: first successor)");
  simulate_cmd->add_option("--p2", simulate.p2, "P2 strategy table (default: first successor)");
  simulate_cmd->add_option("--start", simulate.start, "Start vertex, by name or id");
  simulate_cmd->add_option("--prefix", simulate.prefix, "Color history before the start, space separated");
  simulate_cmd->add_option("--steps", simulate.steps, "Also print this many vertices of the play");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (*solve_cmd) return cmd_solve(solve, out);
    if (*oracle_cmd) return cmd_oracle_check(oracle, out, err);
    if (*verify_cmd) return cmd_verify(verify, out);
    if (*bound_cmd) return cmd_bound(bound, out);
    if (*compile_cmd) return cmd_compile(compile, out);
    if (*simulate_cmd) return cmd_simulate(simulate, out);
    return kExitParse;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitParse;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const ValidationError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitValidation;
  } catch (const nlohmann::json::exception& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::overflow_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace regcomb::tools
