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

#include "graph_checks.hpp"
#include "regcomb/attractor.hpp"
#include "regcomb/random_instances.hpp"
#include "test_support.hpp"

namespace regcomb {
namespace {

using testing::make_arena;
using testing::P1;
using testing::P2;

TEST(Attractor, EverythingAndNothing) {
  auto reg = letter_registry(2);
  Rng rng(1);
  const auto a = random_arena(rng, reg, 5);
  const auto all = attractor(a, VertexSet(5, true), P1);
  EXPECT_EQ(all.attracted, VertexSet(5, true));
  for (auto r : all.rank) EXPECT_EQ(r, 0u);
  EXPECT_TRUE(attractor(a, VertexSet(5), P1).attracted.empty());
}

TEST(Attractor, ChainRanksAndWitness) {
  auto reg = letter_registry(1);
  const auto chain = make_arena(reg, {{P1, 0, {1}}, {P1, 0, {2}}, {P1, 0, {2}}});
  const auto r = attractor(chain, VertexSet(3, {2}), P1);
  EXPECT_EQ(r.attracted, VertexSet(3, true));
  EXPECT_EQ(r.rank, (std::vector<std::size_t>{2, 1, 0}));
  EXPECT_EQ(r.witness[0], 1u);
  EXPECT_EQ(r.witness[1], 2u);
}

TEST(Attractor, OpponentVerticesNeedAllSuccessors) {
  auto reg = letter_registry(1);
  // 0 (P2) can go to the target 1 or to the sink 2.
  const auto a = make_arena(reg, {{P2, 0, {1, 2}}, {P1, 0, {1}}, {P1, 0, {2}}});
  EXPECT_FALSE(attractor(a, VertexSet(3, {1}), P1).attracted.contains(0));
  EXPECT_TRUE(attractor(a, VertexSet(3, {1}), P2).attracted.contains(0));
}

// Every positional strategy of `owner`, as choice vectors.
void for_each_positional(const Arena& a, Player owner, const std::function<void(const std::vector<VertexId>&)>& f) {
  std::vector<VertexId> choice(a.size(), kNoVertex);
  std::function<void(VertexId)> rec = [&](VertexId v) {
    if (v == a.size()) return f(choice);
    if (a.owner(v) != owner) return rec(v + 1);
    for (auto t : a.successors(v)) {
      choice[v] = t;
      rec(v + 1);
    }
  };
  rec(0);
}

TEST(Attractor, ExhaustiveWitnessAndComplementChecks) {
  Rng rng(99);
  auto reg = letter_registry(2);
  for (int round = 0; round < 150; ++round) {
    const auto a = random_arena(rng, reg, 2 + rng() % 5);
    const auto n = a.size();
    VertexSet target(n);
    for (VertexId v = 0; v < n; ++v)
      if (rng() % 3 == 0) target.insert(v);
    for (auto player : {P1, P2}) {
      const auto r = attractor(a, target, player);
      // The witness reaches the target within |V| steps against every positional opponent.
      for_each_positional(a, opponent(player), [&](const std::vector<VertexId>& opp) {
        r.attracted.for_each([&](VertexId start) {
          auto v = start;
          std::size_t steps = 0;
          while (!target.contains(v) && steps <= n) {
            v = a.owner(v) == player ? r.witness[v] : opp[v];
            ++steps;
          }
          EXPECT_TRUE(target.contains(v)) << "round " << round;
        });
      });
      // Outside the attractor the opponent has a positional way to avoid the target forever.
      r.attracted.complement().for_each([&](VertexId start) {
        bool escapes = false;
        for_each_positional(a, opponent(player), [&](const std::vector<VertexId>& opp) {
          if (escapes) return;
          const auto seen = testing::reachable_from(
              a, start, [&](VertexId u, VertexId t) { return a.owner(u) == player || opp[u] == t; });
          bool hits = false;
          target.for_each([&](VertexId t) { hits = hits || seen[t]; });
          escapes = !hits;
        });
        EXPECT_TRUE(escapes) << "round " << round;
      });
    }
  }
}

TEST(Attractor, ConfinedToSubgame) {
  auto reg = letter_registry(1);
  // 0 -> 1 -> 2(target), 0 -> 0; confined to {0, 1} the target is unreachable.
  const auto a = make_arena(reg, {{P1, 0, {0, 1}}, {P1, 0, {1, 2}}, {P1, 0, {2}}});
  const auto r = attractor(a, VertexSet(3, {2}), P1, VertexSet(3, {0, 1}));
  EXPECT_TRUE(r.attracted.empty());
}

}  // namespace
}  // namespace regcomb
