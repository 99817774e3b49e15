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

#include "regcomb/condition.hpp"
#include "regcomb/formula.hpp"

namespace regcomb {
namespace {

TEST(Formula, ConstantsFoldWhileBuilding) {
  const auto t = Formula::constant(true);
  const auto f = Formula::constant(false);
  const auto w = Formula::w(0);
  EXPECT_TRUE((w | t).is_true());
  EXPECT_TRUE((w & f).is_false());
  EXPECT_EQ(w & t, w);
  EXPECT_EQ(w | f, w);
  EXPECT_TRUE((!t).is_false());
  EXPECT_EQ(!!w, w);
}

TEST(Formula, NestedConnectivesFlatten) {
  const auto a = Formula::w(0), b = Formula::w(1), c = Formula::r(0);
  const auto f = (a & b) & c;
  ASSERT_EQ(f.kind(), Formula::Kind::kAnd);
  EXPECT_EQ(f.children().size(), 3u);
  EXPECT_EQ(f, a & (b & c));
}

TEST(Formula, ParsePrecedenceAndPrinting) {
  const auto resolve = combined_resolver(2, 2);
  const auto f = parse_formula("!W1 | W2 & R1", resolve);
  EXPECT_EQ(f, (!Formula::w(0)) | (Formula::w(1) & Formula::r(0)));
  EXPECT_EQ(f.to_string(), "!W1 | W2 & R1");
  const auto g = parse_formula("(W1 | R2) & !(W2 & R1)", resolve);
  EXPECT_EQ(g.to_string(), "(W1 | R2) & !(W2 & R1)");
  EXPECT_EQ(parse_formula(g.to_string(), resolve), g);
}

TEST(Formula, ParseErrorsAreReported) {
  const auto resolve = combined_resolver(1, 1);
  EXPECT_THROW(parse_formula("W1 &", resolve), ParseError);
  EXPECT_THROW(parse_formula("(W1", resolve), ParseError);
  EXPECT_THROW(parse_formula("W3", resolve), ParseError);
  EXPECT_THROW(parse_formula("R2", resolve), ParseError);
  EXPECT_THROW(parse_formula("", resolve), ParseError);
}

TEST(Formula, EvalMatchesTruthTable) {
  const auto f = parse_formula("W1 & !R1 | R2", combined_resolver(1, 2));
  for (unsigned bits = 0; bits < 8; ++bits) {
    const bool w1 = bits & 1, r1 = bits & 2, r2 = bits & 4;
    const bool got = f.eval([&](const Formula& a) {
      if (a.kind() == Formula::Kind::kW) return w1;
      return a.index() == 0 ? r1 : r2;
    });
    EXPECT_EQ(got, (w1 && !r1) || r2) << bits;
  }
}

TEST(Formula, MapAtomsSubstitutesAndFolds) {
  const auto f = Formula::w(0) & Formula::r(0);
  const auto g = f.map_atoms([](const Formula& a) {
    return a.kind() == Formula::Kind::kR ? Formula::constant(true) : a;
  });
  EXPECT_EQ(g, Formula::w(0));
  EXPECT_TRUE(f.mentions(Formula::Kind::kR, 0));
  EXPECT_FALSE(g.mentions(Formula::Kind::kR, 0));
}

}  // namespace
}  // namespace regcomb
