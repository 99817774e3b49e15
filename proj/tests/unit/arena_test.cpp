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

#include "arena_laws.hpp"
#include "regcomb/arena.hpp"
#include "regcomb/random_instances.hpp"
#include "test_support.hpp"

namespace regcomb {
namespace {

using testing::make_arena;
using testing::P1;
using testing::P2;

TEST(ValidateArena, MinimalArenaIsLegal) {
  auto reg = make_registry({"c"});
  const ArenaDescription d{{0}, {}, {{0, 0}}, {{0, 0}}};
  EXPECT_TRUE(validate_arena(d, *reg).ok());
  EXPECT_EQ(Arena::from_description(d, reg).size(), 1u);
}

TEST(ValidateArena, DeadlockNamesTheVertex) {
  auto reg = make_registry({"c"});
  const ArenaDescription d{{0}, {}, {}, {{0, 0}}};
  const auto report = validate_arena(d, *reg);
  ASSERT_TRUE(report.has(ArenaIssue::kDeadlock));
  EXPECT_EQ(report.issues.front().vertices, std::vector<VertexId>{0});
  try {
    Arena::from_description(d, reg);
    FAIL() << "expected ArenaValidationError";
  } catch (const ArenaValidationError& e) {
    EXPECT_TRUE(e.report().has(ArenaIssue::kDeadlock));
  }
}

TEST(ValidateArena, ReportsEveryIssueKind) {
  auto reg = make_registry({"c"});
  EXPECT_TRUE(validate_arena({{0}, {0}, {{0, 0}}, {{0, 0}}}, *reg).has(ArenaIssue::kOverlappingOwnership));
  EXPECT_TRUE(validate_arena({{0}, {}, {{0, 3}}, {{0, 0}}}, *reg).has(ArenaIssue::kUnknownEndpoint));
  EXPECT_TRUE(validate_arena({{0}, {}, {{0, 0}}, {{0, 4}}}, *reg).has(ArenaIssue::kUnknownColor));
  EXPECT_TRUE(validate_arena({{0, 1}, {}, {{0, 0}, {1, 1}}, {{0, 0}}}, *reg).has(ArenaIssue::kMissingColor));
  EXPECT_TRUE(validate_arena({{0, 2}, {}, {{0, 0}, {2, 2}}, {{0, 0}, {2, 0}}}, *reg).has(ArenaIssue::kNonDenseIds));
}

TEST(Restrict, IdentityAndPrecondition) {
  auto reg = make_registry({"a", "b"});
  const auto cycle = make_arena(reg, {{P1, 0, {1}}, {P2, 1, {0}}});
  const auto all = restrict(cycle, VertexSet(2, true));
  EXPECT_EQ(all.arena, cycle);
  VertexSet only_a(2);
  only_a.insert(0);
  try {
    restrict(cycle, only_a);
    FAIL() << "expected RestrictionError";
  } catch (const RestrictionError& e) {
    EXPECT_EQ(e.vertex(), 0u);
  }
}

TEST(Product, UnitMonitorIsARenaming) {
  Rng rng(4);
  auto reg = letter_registry(3);
  for (int i = 0; i < 20; ++i) {
    const auto a = random_arena(rng, reg, 6);
    const auto p = product_arena(a, never_accepting(reg));
    ASSERT_EQ(p.size(), a.size());
    for (VertexId v = 0; v < a.size(); ++v) {
      EXPECT_EQ(p.origin(v).base, v);
      EXPECT_EQ(p.arena().owner(v), a.owner(v));
      EXPECT_EQ(p.arena().color(v), a.color(v));
      EXPECT_TRUE(std::ranges::equal(p.arena().successors(v), a.successors(v)));
    }
  }
}

TEST(Product, EdgesFollowTheMonitorAndPreserveOutDegree) {
  Rng rng(6);
  auto reg = letter_registry(2);
  for (int i = 0; i < 50; ++i) {
    const auto a = random_arena(rng, reg, 2 + rng() % 5);
    const auto m = random_dfa(rng, reg, 2);
    for (auto scope : {ProductScope::kFromInitial, ProductScope::kAllHistories, ProductScope::kFull}) {
      const auto p = product_arena(a, m, scope);
      EXPECT_LE(p.size(), a.size() * m.num_states());
      for (VertexId x = 0; x < p.size(); ++x) {
        const auto& o = p.origin(x);
        ASSERT_EQ(p.arena().successors(x).size(), a.successors(o.base).size());
        for (auto y : p.arena().successors(x)) {
          const auto& t = p.origin(y);
          EXPECT_TRUE(a.has_edge(o.base, t.base));
          EXPECT_EQ(t.states[0], m.next(o.states[0], a.color(o.base)));
        }
      }
    }
  }
}

TEST(Product, ScopesAreNested) {
  Rng rng(12);
  auto reg = letter_registry(3);
  for (int i = 0; i < 30; ++i) {
    const auto a = random_arena(rng, reg, 5);
    std::vector<MonitorDfa> ms{random_dfa(rng, reg, 3), random_dfa(rng, reg, 2)};
    const auto from_initial = product_arena(a, ms, ProductScope::kFromInitial);
    const auto histories = product_arena(a, ms, ProductScope::kAllHistories);
    const auto full = product_arena(a, ms, ProductScope::kFull);
    EXPECT_EQ(full.size(), a.size() * 6);
    for (const auto& pv : from_initial.origins()) EXPECT_TRUE(histories.find(pv));
    for (const auto& pv : histories.origins()) EXPECT_TRUE(full.find(pv));
    EXPECT_EQ(histories.size() % a.size(), 0u);
    for (VertexId v = 0; v < a.size(); ++v) EXPECT_TRUE(from_initial.find({v, {ms[0].initial(), ms[1].initial()}}));
  }
}

TEST(ArenaAlgebra, LawsHoldOnRandomTriples) {
  Rng rng(2024);
  auto reg = letter_registry(2);
  std::size_t idem = 0, assoc = 0, comm = 0;
  for (int i = 0; i < 400; ++i) {
    const auto o = random_arena(rng, reg, 2 + rng() % 5);
    const auto a = random_dfa(rng, reg, 1 + rng() % 3);
    const auto b = random_dfa(rng, reg, 1 + rng() % 3);
    const auto s = testing::random_subset(rng, o.size());
    const auto t = testing::random_subset(rng, o.size());
    const auto i1 = testing::check_idempotency(o, s, t);
    const auto i2 = testing::check_associativity(o, a, b);
    const auto i3 = testing::check_restricted_commutativity(o, a, s);
    EXPECT_TRUE(i1.holds && i2.holds && i3.holds) << "draw " << i;
    idem += i1.defined;
    assoc += i2.defined;
    comm += i3.defined;
  }
  EXPECT_GE(idem, 50u);
  EXPECT_EQ(assoc, 400u);
  EXPECT_GE(comm, 50u);
}

TEST(CanonicalForm, DetectsNonIsomorphicArenas) {
  auto reg = make_registry({"a", "b"});
  const auto x = make_arena(reg, {{P1, 0, {1}}, {P2, 1, {0}}});
  const auto y = make_arena(reg, {{P2, 1, {1}}, {P1, 0, {0}}});
  const auto z = make_arena(reg, {{P1, 0, {0}}, {P2, 1, {1}}});
  const std::vector<std::uint64_t> key{0, 1};
  const std::vector<VertexId> rx{0}, ry{1}, rz{0};
  const std::vector<std::uint64_t> key_y{1, 0};
  EXPECT_EQ(canonical_form(x, rx, key), canonical_form(y, ry, key_y)) << "y is x with ids swapped";
  EXPECT_NE(canonical_form(x, rx, key), canonical_form(z, rz, key));
}

TEST(Arena, DotExportMarksOwners) {
  auto reg = make_registry({"a", "b"});
  const auto x = make_arena(reg, {{P1, 0, {1}}, {P2, 1, {0}}});
  const auto dot = to_dot(x);
  EXPECT_NE(dot.find("0 [shape=circle, label=\"0:a\"]"), std::string::npos);
  EXPECT_NE(dot.find("1 [shape=diamond, label=\"1:b\"]"), std::string::npos);
  EXPECT_NE(dot.find("0 -> 1;"), std::string::npos);
}

}  // namespace
}  // namespace regcomb
