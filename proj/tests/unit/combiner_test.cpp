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

#include <gtest/gtest.h>

#include <algorithm>

#include "dual_path.hpp"
#include "region_checks.hpp"
#include "regcomb/combiner.hpp"
#include "regcomb/oracle.hpp"
#include "regcomb/random_instances.hpp"
#include "test_support.hpp"

namespace regcomb {
namespace {

using testing::make_arena;
using testing::P1;
using testing::P2;

MonitorDfa avoid(RegistryPtr reg, std::initializer_list<ColorId> bad) {
  const std::vector<ColorId> colors(bad);
  return compile_color_safety(std::move(reg), colors);
}

TEST(RegionDecompose, NoFlagsAndAllFlags) {
  Rng rng(1);
  auto reg = letter_registry(2);
  const auto a = random_arena(rng, reg, 6);
  const VertexSet win1(6, {0, 2, 4});
  const auto none = region_decompose(a, VertexSet(6), win1);
  EXPECT_TRUE(none.s1.empty() && none.s2.empty() && none.s1p.empty() && none.s2p.empty());
  EXPECT_EQ(none.vtop, VertexSet(6, true));
  const auto all = region_decompose(a, VertexSet(6, true), win1);
  EXPECT_TRUE(all.vtop.empty());
  EXPECT_EQ(all.s1, win1);
  EXPECT_EQ(all.s2, win1.complement());
}

TEST(RegionDecompose, FunnelIntoFlaggedWinningVertex) {
  auto reg = letter_registry(1);
  // 0 -> 1 -> 2 -> 3 (flagged, P1 wins below); 0 and 2 may also loop.
  const auto a = make_arena(reg, {{P1, 0, {0, 1}}, {P1, 0, {2}}, {P1, 0, {2, 3}}, {P2, 0, {3}}});
  const auto d = region_decompose(a, VertexSet(4, {3}), VertexSet(4, {3}));
  EXPECT_EQ(d.s1, VertexSet(4, {3}));
  EXPECT_EQ(d.s1p, VertexSet(4, {0, 1, 2}));
  EXPECT_TRUE(d.vtop.empty());
}

TEST(SolveCombined, ConstantFormulas) {
  Rng rng(2);
  auto reg = letter_registry(2);
  const auto a = random_arena(rng, reg, 5);
  const auto t = solve_combined(a, CombinedCondition(reg, {}, {}, Formula::constant(true)));
  EXPECT_EQ(t.path, "constant");
  for (auto w : t.winner) EXPECT_EQ(w, P1);
  const auto f = solve_combined(a, CombinedCondition(reg, {}, {}, Formula::constant(false)));
  for (auto w : f.winner) EXPECT_EQ(w, P2);
  check_profile(t.profile, a);
}

TEST(SolveCombined, WithoutMonitorsMatchesSolveEl) {
  Rng rng(3);
  for (int round = 0; round < 60; ++round) {
    auto reg = letter_registry(1 + rng() % 3);
    const auto a = random_arena(rng, reg, 2 + rng() % 8);
    const auto w1 = random_el_formula(rng, reg->size());
    const auto w2 = random_el_formula(rng, reg->size());
    const CombinedCondition cond(reg, {w1, w2}, {}, Formula::w(0) | !Formula::w(1));
    const auto r = solve_combined(a, cond);
    const auto el = solve_el(a, w1 | !w2);
    for (VertexId v = 0; v < a.size(); ++v) EXPECT_EQ(r.initial_winner(v) == P1, el.win1.contains(v));
  }
}

TEST(SolveCombined, AgreesWithOracleOnRandomInstances) {
  Rng rng(42);
  std::size_t mixed = 0;
  for (int round = 0; round < 300; ++round) {
    const auto inst = random_instance(rng);
    const auto r = solve_combined(inst.arena, inst.condition);
    ASSERT_EQ(testing::winner_mismatches(r, oracle_solve(inst.arena, inst.condition)), 0u) << "round " << round;
    const auto p1 = static_cast<std::size_t>(std::count(r.winner.begin(), r.winner.end(), P1));
    mixed += p1 != 0 && p1 != r.winner.size();
  }
  EXPECT_GT(mixed, 30u) << "the generator should produce non-trivial winner tables";
}

TEST(SolveCombined, MonitorOrderAndFastPathsDoNotChangeWinners) {
  Rng rng(43);
  for (int round = 0; round < 150; ++round) {
    const auto inst = random_instance(rng);
    const auto base = solve_combined(inst.arena, inst.condition);
    SolveOptions off;
    off.fast_path = FastPath::kOff;
    EXPECT_EQ(solve_combined(inst.arena, inst.condition, off).winner, base.winner);
    if (inst.condition.l() == 2) {
      SolveOptions reversed;
      reversed.monitor_order = {0, 1};
      EXPECT_EQ(solve_combined(inst.arena, inst.condition, reversed).winner, base.winner);
    }
  }
  SolveOptions bad;
  bad.monitor_order = {1};
  auto reg = letter_registry(1);
  const auto a = make_arena(reg, {{P1, 0, {0}}});
  EXPECT_THROW(solve_combined(a, CombinedCondition(reg, {}, {avoid(reg, {0})}, Formula::r(0)), bad),
               ValidationError);
}

TEST(SolveCombined, RegionInvariantsHoldAtEveryLevel) {
  Rng rng(44);
  std::size_t nodes = 0;
  for (int round = 0; round < 200; ++round) {
    const auto inst = random_instance(rng);
    SolveOptions options;
    options.fast_path = FastPath::kOff;
    options.region_observer = [&](const Arena& g, const VertexSet& flagged, const VertexSet& win1_bot,
                                  const RegionDecomposition& d) {
      ++nodes;
      const auto violation = testing::region_violation(g, flagged, win1_bot, d);
      EXPECT_FALSE(violation) << *violation;
    };
    solve_combined(inst.arena, inst.condition, options);
  }
  EXPECT_GT(nodes, 100u);
}

TEST(FastPaths, ConjunctionSpecialCases) {
  Rng rng(5);
  auto reg = letter_registry(2);
  for (int round = 0; round < 40; ++round) {
    const auto a = random_arena(rng, reg, 2 + rng() % 7);
    const auto w = random_el_formula(rng, 2);
    const auto vacuous = conj_fast_path(a, w, never_accepting(reg));
    const auto el = solve_el(a, w);
    for (VertexId v = 0; v < a.size(); ++v) EXPECT_EQ(vacuous.initial_winner(v) == P1, el.win1.contains(v));

    // Pure safety: P1 wins outside P2's attractor to the a-colored vertices.
    const auto safety = conj_fast_path(a, Formula::constant(true), avoid(reg, {0}));
    VertexSet bad(a.size());
    for (VertexId v = 0; v < a.size(); ++v)
      if (a.color(v) == 0) bad.insert(v);
    const auto trap = testing::naive_attractor(a, bad, P2);
    for (VertexId v = 0; v < a.size(); ++v) EXPECT_EQ(safety.initial_winner(v) == P1, !trap.contains(v));
  }
}

TEST(FastPaths, DisjunctionSpecialCases) {
  Rng rng(6);
  auto reg = letter_registry(2);
  for (int round = 0; round < 40; ++round) {
    const auto a = random_arena(rng, reg, 2 + rng() % 7);
    const auto w = random_el_formula(rng, 2);
    const auto always = disj_fast_path(a, w, never_accepting(reg));
    for (auto x : always.winner) EXPECT_EQ(x, P1);
    const auto safety = disj_fast_path(a, Formula::constant(false), avoid(reg, {1}));
    const auto reference = conj_fast_path(a, Formula::constant(true), avoid(reg, {1}));
    EXPECT_EQ(safety.winner, reference.winner);
  }
}

TEST(FastPaths, MatchGeneralRecursionAndMemoryBound) {
  Rng rng(7);
  for (int round = 0; round < 150; ++round) {
    auto reg = letter_registry(1 + rng() % 3);
    const auto a = random_arena(rng, reg, 2 + rng() % 8);
    const auto w = random_el_formula(rng, reg->size());
    const auto m = random_monitor(rng, reg, 3);
    SolveOptions off;
    off.fast_path = FastPath::kOff;
    const CombinedCondition conj(reg, {w}, {m}, Formula::w(0) & Formula::r(0));
    const CombinedCondition disj(reg, {w}, {m}, Formula::w(0) | Formula::r(0));
    const auto c = conj_fast_path(a, w, m);
    EXPECT_EQ(c.path, "conj");
    EXPECT_EQ(c.winner, solve_combined(a, conj, off).winner);
    EXPECT_EQ(disj_fast_path(a, w, m).winner, solve_combined(a, disj, off).winner);
    // |Q| · m(|V|·|Q|), with m bounded by the record count of the LAR.
    std::size_t records = 1;
    for (std::size_t i = 2; i <= atomize(w).atoms.size(); ++i) records *= i;
    EXPECT_LE(c.profile.p1.size(), m.num_states() * records);
  }
}

TEST(SolveCombined, StrategiesAreValidOnTheBaseArena) {
  Rng rng(8);
  for (int round = 0; round < 100; ++round) {
    const auto inst = random_instance(rng);
    const auto r = solve_combined(inst.arena, inst.condition);
    check_profile(r.profile, inst.arena);
    for (MemoryId m = 0; m < r.profile.p1.size(); ++m)
      for (VertexId v = 0; v < inst.arena.size(); ++v)
        if (inst.arena.owner(v) == P1) {
          EXPECT_TRUE(inst.arena.has_edge(v, r.profile.p1.action(m, v)));
        }
  }
}

}  // namespace
}  // namespace regcomb
