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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "arena_laws.hpp"
#include "dual_path.hpp"
#include "graph_checks.hpp"
#include "region_checks.hpp"
#include "regcomb/bounds.hpp"
#include "regcomb/combiner.hpp"
#include "regcomb/el_solver.hpp"
#include "regcomb/oracle.hpp"
#include "regcomb/random_instances.hpp"
#include "regcomb_tools/cli.hpp"
#include "regcomb_tools/game_file.hpp"
#include "simulators.hpp"
#include "test_support.hpp"

namespace regcomb {
using namespace tools;
namespace {

// Pinned thresholds.
constexpr std::size_t kSuiteInstances = 500;
constexpr double kSuiteSeconds = 60.0;
constexpr std::size_t kMinMutations = 20;
constexpr std::size_t kParityGames = 200;
constexpr std::size_t kMaxWordLength = 8;
constexpr std::size_t kLawTriples = 200;
constexpr std::size_t kPredictabilityInstances = 50;
constexpr std::size_t kHistoryLength = 6;
constexpr std::uint64_t kSeed = 20240611;

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Solved {
  Instance instance;
  SolveResult result;
};

std::vector<Solved> solve_suite(double& elapsed, std::size_t& mismatches, std::size_t& region_nodes,
                                std::vector<std::string>& region_errors) {
  Rng rng(kSeed);
  std::vector<Solved> suite;
  SolveOptions options;
  options.region_observer = [&](const Arena& g, const VertexSet& flagged, const VertexSet& win1_bot,
                                const RegionDecomposition& d) {
    ++region_nodes;
    if (auto v = testing::region_violation(g, flagged, win1_bot, d)) region_errors.push_back(*v);
  };
  const auto start = Clock::now();
  for (std::size_t i = 0; i < kSuiteInstances; ++i) {
    auto inst = random_instance(rng);
    auto result = solve_combined(inst.arena, inst.condition, options);
    mismatches += testing::winner_mismatches(result, oracle_solve(inst.arena, inst.condition)) != 0;
    suite.push_back({std::move(inst), std::move(result)});
  }
  elapsed = seconds_since(start);
  return suite;
}

/// Base arena vertex v is owned by P1, (v, t) is won by P1 and the successor u
/// leads to a P2-won product vertex; every memory state then plays u at v.
std::optional<MooreStrategy> losing_mutation(const Solved& s) {
  const auto& a = s.instance.arena;
  const auto& r = s.result;
  const auto& st = r.profile.p1;
  for (VertexId x = 0; x < r.product.size(); ++x) {
    const auto& pv = r.product.origin(x);
    if (a.owner(pv.base) != Player::kOne || r.winner[x] != Player::kOne) continue;
    for (VertexId y : r.product.arena().successors(x)) {
      if (r.winner[y] != Player::kTwo) continue;
      std::vector<MemoryId> update;
      std::vector<VertexId> action;
      for (MemoryId m = 0; m < st.size(); ++m)
        for (ColorId c = 0; c < st.num_colors(); ++c) update.push_back(st.update(m, c));
      for (MemoryId m = 0; m < st.size(); ++m)
        for (VertexId v = 0; v < a.size(); ++v)
          action.push_back(v == pv.base ? r.product.origin(y).base : st.action(m, v));
      return MooreStrategy::create(Player::kOne, a, st.size(), st.initial(), std::move(update), std::move(action));
    }
  }
  return std::nullopt;
}

Outcome criterion_verification(const std::vector<Solved>& suite) {
  std::size_t verified = 0, failed = 0, mutations = 0, rejected = 0;
  for (const auto& s : suite) {
    for (Player p : {Player::kOne, Player::kTwo}) {
      const auto& strat = p == Player::kOne ? s.result.profile.p1 : s.result.profile.p2;
      const auto report = verify_strategy(s.instance.arena, s.instance.condition, strat, claimed_region(s.result, p));
      ++verified;
      failed += !report.passed;
    }
    if (auto bad = losing_mutation(s)) {
      ++mutations;
      const auto claimed = claimed_region(s.result, Player::kOne);
      const auto report = verify_strategy(s.instance.arena, s.instance.condition, *bad, claimed);
      rejected += !report.passed && report.counterexample &&
                  !eval_combined_lasso(s.instance.condition, *report.counterexample);
    }
  }
  std::ostringstream d;
  d << verified - failed << "/" << verified << " strategies verified, " << rejected << "/" << mutations
    << " mutations rejected with losing lassos";
  return {failed == 0 && mutations >= kMinMutations && rejected == mutations, d.str()};
}

Outcome criterion_parity() {
  Rng rng(kSeed + 3);
  std::size_t mismatches = 0;
  for (std::size_t i = 0; i < kParityGames; ++i) {
    const auto game = random_parity_game(rng, 6, 4);
    const auto bf = brute_force_positional(game);
    const auto z = zielonka(game);
    mismatches += bf.win1 != z.win1 || bf.win2 != z.win2;
  }
  return {mismatches == 0, std::to_string(kParityGames) + " games, " + std::to_string(mismatches) + " mismatches"};
}

/// Walks all words up to kMaxWordLength over 3 colors alongside the monitor.
template <typename Violated>
std::size_t energy_disagreements(const MonitorDfa& dfa, Violated violated) {
  std::size_t bad = 0;
  testing::for_each_word(3, kMaxWordLength, [&](const std::vector<ColorId>& w) {
    bad += accepts(dfa, w) != violated(w);
  });
  return bad;
}

Outcome criterion_compilers() {
  auto reg = letter_registry(3);
  std::size_t monitors = 0, disagreements = 0, size_errors = 0;
  std::vector<long> w(3);
  for (w[0] = -2; w[0] <= 2; ++w[0])
    for (w[1] = -2; w[1] <= 2; ++w[1])
      for (w[2] = -2; w[2] <= 2; ++w[2]) {
        const WeightMap weights(w);
        for (long b = 0; b <= 3; ++b)
          for (long init = 0; init <= b; ++init) {
            const EnergyOptions opts{init, 0};
            const auto battery = compile_battery_energy(reg, weights, b, opts);
            const auto spill = compile_spillover_energy(reg, weights, b, opts);
            size_errors += battery.num_states() != static_cast<std::size_t>(b + 2);
            disagreements += energy_disagreements(battery, [&](const std::vector<ColorId>& word) {
              return testing::battery_violated(w, b, init, 0, word);
            });
            disagreements += energy_disagreements(spill, [&](const std::vector<ColorId>& word) {
              return testing::spillover_violated(w, b, init, 0, word);
            });
            monitors += 2;
          }
        for (std::size_t len = 1; len <= 3; ++len) {
          const auto window = compile_window(reg, weights, len);
          disagreements += energy_disagreements(window, [&](const std::vector<ColorId>& word) {
            return testing::window_violated(w, len, word);
          });
          ++monitors;
        }
      }
  std::ostringstream d;
  d << monitors << " monitors over all words of length <= " << kMaxWordLength << ", " << disagreements
    << " disagreements, " << size_errors << " battery size errors";
  return {disagreements == 0 && size_errors == 0, d.str()};
}

BigInt factorial(std::size_t n) {
  BigInt f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= static_cast<unsigned long>(i);
  return f;
}

/// LAR memory for the largest EL formula left once every R_i is fixed.
BigInt base_memory(const CombinedCondition& cond) {
  std::size_t atoms = 0;
  for (std::uint32_t bits = 0; bits < (1U << cond.l()); ++bits) {
    auto c = cond;
    for (std::size_t i = cond.l(); i-- > 0;) c = specialize_formula(c, i, (bits >> i) & 1U);
    atoms = std::max(atoms, atomize(c.inline_el()).atoms.size());
  }
  return factorial(atoms);
}

Outcome criterion_memory(const std::vector<Solved>& suite) {
  std::size_t checked = 0, violations = 0;
  for (const auto& s : suite) {
    const auto& cond = s.instance.condition;
    std::size_t m = 1;
    for (const auto& mon : cond.monitors()) m = std::max(m, mon.num_states());
    const auto base = base_memory(cond);
    const auto bound = memory_bound(static_cast<unsigned>(cond.l()), s.instance.arena.size(), m,
                                    [&](const BigInt&) { return base; });
    violations += BigInt(static_cast<unsigned long>(s.result.profile.p1.size())) > bound;
    ++checked;
  }
  Rng rng(kSeed + 5);
  std::size_t conj_checked = 0, conj_violations = 0;
  for (std::size_t i = 0; i < 200; ++i) {
    auto reg = letter_registry(1 + rng() % 3);
    const auto a = random_arena(rng, reg, 2 + rng() % 9);
    const auto w = random_el_formula(rng, reg->size());
    const auto mon = random_monitor(rng, reg, 3);
    const auto r = conj_fast_path(a, w, mon);
    const auto bound = BigInt(static_cast<unsigned long>(mon.num_states())) * factorial(atomize(w).atoms.size());
    conj_violations += BigInt(static_cast<unsigned long>(r.profile.p1.size())) > bound;
    ++conj_checked;
  }
  std::ostringstream d;
  d << checked << " stitched strategies, " << violations << " over the recursion bound; " << conj_checked
    << " conj fast-path strategies, " << conj_violations << " over |Q|*base";
  return {violations == 0 && conj_violations == 0, d.str()};
}

Outcome criterion_laws() {
  Rng rng(kSeed + 6);
  std::size_t counts[3] = {0, 0, 0}, violations = 0, draws = 0;
  while (std::min({counts[0], counts[1], counts[2]}) < kLawTriples && draws < 20000) {
    ++draws;
    auto reg = letter_registry(1 + rng() % 3);
    const auto o = random_arena(rng, reg, 2 + rng() % 7);
    const auto a = random_dfa(rng, reg, 1 + rng() % 3);
    const auto b = random_dfa(rng, reg, 1 + rng() % 3);
    const auto s = testing::random_subset(rng, o.size());
    const auto t = testing::random_subset(rng, o.size());
    const testing::LawCheck checks[3] = {testing::check_idempotency(o, s, t), testing::check_associativity(o, a, b),
                                         testing::check_restricted_commutativity(o, a, s)};
    for (int i = 0; i < 3; ++i)
      if (checks[i].defined) {
        ++counts[i];
        violations += !checks[i].holds;
      }
  }
  std::ostringstream d;
  d << "idempotency " << counts[0] << ", associativity " << counts[1] << ", restricted commutativity " << counts[2]
    << " triples, " << violations << " violations";
  return {violations == 0 && std::min({counts[0], counts[1], counts[2]}) >= kLawTriples, d.str()};
}

Outcome criterion_regions(std::size_t suite_nodes, std::vector<std::string> errors) {
  Rng rng(kSeed);
  std::size_t nodes = suite_nodes;
  SolveOptions options;
  options.fast_path = FastPath::kOff;
  options.region_observer = [&](const Arena& g, const VertexSet& flagged, const VertexSet& win1_bot,
                                const RegionDecomposition& d) {
    ++nodes;
    if (auto v = testing::region_violation(g, flagged, win1_bot, d)) errors.push_back(*v);
  };
  for (std::size_t i = 0; i < kSuiteInstances; ++i) {
    const auto inst = random_instance(rng);
    solve_combined(inst.arena, inst.condition, options);
  }
  std::ostringstream d;
  d << nodes << " recursion levels checked, " << errors.size() << " violations";
  if (!errors.empty()) d << " (first: " << errors.front() << ")";
  return {errors.empty() && nodes > 0, d.str()};
}

Outcome criterion_predictability() {
  Rng rng(kSeed + 8);
  std::size_t histories = 0, wrong = 0;
  for (std::size_t i = 0; i < kPredictabilityInstances; ++i) {
    const auto inst = random_instance(rng);
    const auto r = solve_combined(inst.arena, inst.condition);
    const auto oracle = oracle_solve(inst.arena, inst.condition);
    for (VertexId v = 0; v < inst.arena.size(); ++v) {
      const auto pred = extract_predictability(r, v);
      testing::for_each_word(inst.arena.num_colors(), kHistoryLength, [&](const std::vector<ColorId>& w) {
        ProductVertex pv{v, {}};
        for (const auto& m : inst.condition.monitors()) pv.states.push_back(run_dfa(m, w));
        wrong += accepts(pred.dfa, w) != (oracle.winner_at(pv) == Player::kOne);
        ++histories;
      });
    }
  }
  std::ostringstream d;
  d << kPredictabilityInstances << " instances, " << histories << " (vertex, history) pairs, " << wrong
    << " disagreements";
  return {wrong == 0, d.str()};
}

Outcome criterion_mdbem() {
  const auto path = std::filesystem::path(REGCOMB_FIXTURES) / "reporter_mdbem.json";
  const auto game = load_game_file(path);
  const auto r = solve_combined(game.arena, game.condition);
  bool verified = true;
  for (Player p : {Player::kOne, Player::kTwo}) {
    const auto& s = p == Player::kOne ? r.profile.p1 : r.profile.p2;
    verified = verified && verify_strategy(game.arena, game.condition, s, claimed_region(r, p)).passed;
  }
  std::ostringstream out, err;
  const int code = run_cli({"oracle-check", path.string()}, out, err);
  std::size_t p1_vertices = 0;
  for (VertexId v = 0; v < game.arena.size(); ++v) p1_vertices += r.initial_winner(v) == Player::kOne;
  std::ostringstream d;
  d << game.arena.size() << " vertices, P1 wins " << p1_vertices << " initially, strategies "
    << (verified ? "verify" : "fail verification") << ", oracle-check exit " << code;
  return {verified && code == kExitOk, d.str()};
}

int run() {
  double elapsed = 0;
  std::size_t mismatches = 0, region_nodes = 0;
  std::vector<std::string> region_errors;
  const auto suite = solve_suite(elapsed, mismatches, region_nodes, region_errors);

  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"dual-path soundness",
       [&] {
         std::ostringstream d;
         d << suite.size() << " instances, " << mismatches << " mismatches, " << elapsed << " s";
         return Outcome{mismatches == 0 && suite.size() >= kSuiteInstances && elapsed < kSuiteSeconds, d.str()};
       }},
      {"strategy verification", [&] { return criterion_verification(suite); }},
      {"parity solver", criterion_parity},
      {"monitor compilers", criterion_compilers},
      {"memory bounds", [&] { return criterion_memory(suite); }},
      {"arena algebra", criterion_laws},
      {"region invariants", [&] { return criterion_regions(region_nodes, region_errors); }},
      {"predictability", criterion_predictability},
      {"bounded-energy Muller fixture", criterion_mdbem},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}

}  // namespace
}  // namespace regcomb

int main() { return regcomb::run(); }
