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

#include "regcomb/monitor.hpp"
#include "regcomb/random_instances.hpp"
#include "simulators.hpp"
#include "test_support.hpp"

namespace regcomb {
namespace {

using testing::for_each_word;

bool same_language(const MonitorDfa& a, const MonitorDfa& b, std::size_t max_length) {
  bool same = true;
  for_each_word(a.num_colors(), max_length, [&](const std::vector<ColorId>& w) {
    if (accepts(a, w) != accepts(b, w)) same = false;
  });
  return same;
}

// The 2-state absorbing monitor for "contains color 1".
MonitorDfa contains_one() {
  auto reg = make_registry({"0", "1"});
  return MonitorDfa::create(reg, 2, 0, {1}, {0, 1, 1, 1});
}

TEST(MonitorDfa, RunFollowsTheTransitionFunction) {
  const auto m = contains_one();
  EXPECT_EQ(run_dfa(m, {}), m.initial());
  const std::vector<ColorId> word{0, 0, 1, 0};
  EXPECT_TRUE(m.is_final(run_dfa(m, word)));
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    const auto dfa = random_dfa(rng, make_registry({"a", "b", "c"}), 4);
    std::vector<ColorId> w;
    for (int j = 0; j < 6; ++j) {
      const auto c = static_cast<ColorId>(rng() % 3);
      const auto before = run_dfa(dfa, w);
      w.push_back(c);
      EXPECT_EQ(run_dfa(dfa, w), dfa.next(before, c));
    }
  }
  const std::vector<ColorId> unknown{7};
  EXPECT_THROW(run_dfa(m, unknown), ValidationError);
}

TEST(MonitorDfa, CreateRejectsPartialTables) {
  auto reg = make_registry({"a", "b"});
  EXPECT_THROW(MonitorDfa::create(reg, 2, 0, {1}, {0, 1, 1}), ValidationError);
  EXPECT_THROW(MonitorDfa::create(reg, 2, 0, {1}, {0, 1, 1, 2}), ValidationError);
  EXPECT_THROW(MonitorDfa::create(reg, 2, 2, {1}, {0, 1, 1, 1}), ValidationError);
  EXPECT_THROW(MonitorDfa::create(reg, 2, 0, {5}, {0, 1, 1, 1}), ValidationError);
}

TEST(DfaProduct, NeutralAndIdempotentElements) {
  Rng rng(17);
  auto reg = make_registry({"a", "b"});
  for (int i = 0; i < 40; ++i) {
    const auto a = random_dfa(rng, reg, 3);
    const auto b = random_dfa(rng, reg, 3);
    EXPECT_TRUE(same_language(dfa_product(a, never_accepting(reg), FinalCombiner::kOr), a, 6));
    EXPECT_TRUE(same_language(dfa_product(a, a, FinalCombiner::kAnd), a, 6));
    const auto ab = dfa_product(a, b, FinalCombiner::kAnd);
    EXPECT_LE(ab.num_states(), a.num_states() * b.num_states());
    for_each_word(2, 5, [&](const std::vector<ColorId>& w) {
      EXPECT_EQ(accepts(ab, w), accepts(a, w) && accepts(b, w));
      EXPECT_EQ(accepts(dfa_product(a, b, FinalCombiner::kOr), w), accepts(a, w) || accepts(b, w));
    });
  }
  EXPECT_THROW(dfa_product(contains_one(), never_accepting(reg), FinalCombiner::kOr), ValidationError);
}

TEST(MakeAbsorbing, AcceptsWordsWithAnAcceptedPrefix) {
  const auto m = contains_one();
  EXPECT_TRUE(same_language(make_absorbing(m), m, 6));

  // Exactly "01": states 0 -0-> 1 -1-> 2 (final), everything else to the dead state 3.
  auto reg = make_registry({"0", "1"});
  const auto exact = MonitorDfa::create(reg, 4, 0, {2}, {1, 3, 3, 2, 3, 3, 3, 3});
  const auto abs = make_absorbing(exact);
  EXPECT_TRUE(abs.is_absorbing());
  for_each_word(2, 4, [&](const std::vector<ColorId>& w) {
    const bool has_prefix = w.size() >= 2 && w[0] == 0 && w[1] == 1;
    EXPECT_EQ(accepts(abs, w), has_prefix);
  });

  const auto all = MonitorDfa::create(reg, 1, 0, {0}, {0, 0});
  EXPECT_TRUE(accepts(make_absorbing(all), {}));
}

TEST(MakeAbsorbing, RandomDfasAgreeWithPrefixClosure) {
  Rng rng(23);
  auto reg = make_registry({"a", "b", "c"});
  for (int i = 0; i < 60; ++i) {
    const auto d = random_dfa(rng, reg, 4);
    const auto abs = make_absorbing(d);
    EXPECT_TRUE(abs.is_absorbing());
    for_each_word(3, 5, [&](const std::vector<ColorId>& w) {
      bool prefix = false;
      for (std::size_t n = 0; n <= w.size() && !prefix; ++n)
        prefix = accepts(d, std::span<const ColorId>(w.data(), n));
      EXPECT_EQ(accepts(abs, w), prefix);
    });
  }
}

TEST(Battery, SpecWordAndSimpleCases) {
  auto reg = make_registry({"p", "m", "z"});
  const WeightMap w({1, -1, 0});
  const auto m = compile_battery_energy(reg, w, 2);
  EXPECT_EQ(m.num_states(), 4u);
  EXPECT_TRUE(m.is_absorbing());
  // Levels 1, 2, 2, 1, 0, -1.
  const std::vector<ColorId> word{0, 0, 0, 1, 1, 1};
  for (std::size_t n = 0; n < word.size(); ++n)
    EXPECT_FALSE(accepts(m, std::span<const ColorId>(word.data(), n)));
  EXPECT_TRUE(accepts(m, word));
  const std::vector<ColorId> non_negative{0, 2, 0, 2, 2};
  EXPECT_FALSE(accepts(m, non_negative));
  const std::vector<ColorId> one_minus{1};
  EXPECT_TRUE(accepts(compile_battery_energy(reg, w, 0), one_minus));
}

TEST(Spillover, SpecWords) {
  auto reg = make_registry({"p", "m"});
  const WeightMap w({1, -1});
  const auto m = compile_spillover_energy(reg, w, 2);
  const std::vector<ColorId> three_up{0, 0, 0};
  EXPECT_FALSE(accepts(m, std::span<const ColorId>(three_up.data(), 2)));
  EXPECT_TRUE(accepts(m, three_up));
  std::vector<ColorId> osc;
  for (int i = 0; i < 8; ++i) {
    osc.push_back(i % 2 == 0 ? 0 : 1);
    EXPECT_FALSE(accepts(m, osc));
  }
  const std::vector<ColorId> down{1};
  EXPECT_TRUE(accepts(m, down));
}

TEST(Window, SpecWords) {
  auto reg = make_registry({"m1", "p2", "p5", "z"});
  const WeightMap w({-1, 2, 5, 0});
  const auto one = compile_window(reg, w, 1);
  for_each_word(4, 4, [&](const std::vector<ColorId>& word) {
    EXPECT_EQ(accepts(one, word), std::find(word.begin(), word.end(), 0) != word.end());
  });
  const auto two = compile_window(reg, w, 2);
  const std::vector<ColorId> good{0, 1}, bad{0, 0, 2};
  EXPECT_FALSE(accepts(two, good));
  EXPECT_TRUE(accepts(two, bad));
}

TEST(ColorTargets, ReachAndSafety) {
  auto reg = make_registry({"a", "b"});
  const std::vector<ColorId> none, both{0, 1}, only_b{1};
  for_each_word(2, 5, [&](const std::vector<ColorId>& word) {
    EXPECT_FALSE(accepts(compile_color_safety(reg, none), word));
    EXPECT_EQ(accepts(compile_color_safety(reg, both), word), !word.empty());
    EXPECT_EQ(accepts(compile_color_reach(reg, only_b), word), testing::contains_any(only_b, word));
  });
  EXPECT_TRUE(compile_color_safety(reg, only_b).is_absorbing());
}

// Every weight map over two colors with weights in [-2, 2], every bound up to
// 3 and every initial level, against the direct simulations on all words of
// length at most 8.
TEST(EnergyCompilers, ExhaustiveAgainstSimulation) {
  auto reg = make_registry({"a", "b"});
  for (long wa = -2; wa <= 2; ++wa)
    for (long wb = -2; wb <= 2; ++wb) {
      const std::vector<long> weights{wa, wb};
      for (long b = 0; b <= 3; ++b)
        for (long init = 0; init <= b; ++init) {
          const EnergyOptions opts{init, 0};
          const auto battery = compile_battery_energy(reg, WeightMap(weights), b, opts);
          const auto spill = compile_spillover_energy(reg, WeightMap(weights), b, opts);
          ASSERT_EQ(battery.num_states(), static_cast<std::size_t>(b + 2));
          ASSERT_TRUE(battery.is_absorbing() && spill.is_absorbing());
          for_each_word(2, 8, [&](const std::vector<ColorId>& w) {
            ASSERT_EQ(accepts(battery, w), testing::battery_violated(weights, b, init, 0, w));
            ASSERT_EQ(accepts(spill, w), testing::spillover_violated(weights, b, init, 0, w));
          });
        }
    }
}

TEST(WindowCompiler, ExhaustiveAgainstSimulation) {
  auto reg = make_registry({"a", "b"});
  for (long wa = -2; wa <= 2; ++wa)
    for (long wb = -2; wb <= 2; ++wb) {
      const std::vector<long> weights{wa, wb};
      for (std::size_t len = 1; len <= 3; ++len) {
        const auto m = compile_window(reg, WeightMap(weights), len);
        ASSERT_TRUE(m.is_absorbing());
        for_each_word(2, 8, [&](const std::vector<ColorId>& w) {
          ASSERT_EQ(accepts(m, w), testing::window_violated(weights, len, w)) << wa << " " << wb << " " << len;
        });
      }
    }
}

TEST(EnergyCompilers, RejectBadParameters) {
  auto reg = make_registry({"a"});
  EXPECT_THROW(compile_battery_energy(reg, WeightMap({1}), -1), ValidationError);
  EXPECT_THROW(compile_battery_energy(reg, WeightMap({1, 2}), 2), ValidationError);
  EXPECT_THROW(compile_spillover_energy(reg, WeightMap({1}), 2, {3, 0}), ValidationError);
  EXPECT_THROW(compile_window(reg, WeightMap({1}), 0), ValidationError);
}

TEST(Tracker, TuplesFollowEachMonitor) {
  Rng rng(8);
  auto reg = make_registry({"a", "b"});
  for (int i = 0; i < 30; ++i) {
    std::vector<MonitorDfa> ms{random_monitor(rng, reg, 3), random_monitor(rng, reg, 3)};
    const auto tracker = make_tracker(reg, ms);
    EXPECT_LE(tracker.size(), 9u);
    for_each_word(2, 5, [&](const std::vector<ColorId>& w) {
      const auto& tuple = tracker.tuples[run_dfa(tracker.dfa, w)];
      EXPECT_EQ(tuple[0], run_dfa(ms[0], w));
      EXPECT_EQ(tuple[1], run_dfa(ms[1], w));
    });
  }
}

TEST(MonitorTable, RoundTrip) {
  Rng rng(9);
  auto reg = make_registry({"a", "b", "c"});
  for (int i = 0; i < 20; ++i) {
    const auto m = random_dfa(rng, reg, 3);
    EXPECT_EQ(parse_table(reg, to_table(m)), m);
  }
  EXPECT_THROW(parse_table(reg, "initial 0\n"), ParseError);
  EXPECT_THROW(parse_table(reg, "states 1\n0 a => 0\n"), ParseError);
  EXPECT_THROW(parse_table(reg, "states 1\n0 a -> 0\n"), ValidationError);
}

}  // namespace
}  // namespace regcomb
