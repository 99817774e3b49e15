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

#pragma once

#include <algorithm>
#include <span>
#include <vector>

#include "regcomb/common.hpp"

// Direct simulations of the violation languages, written independently of the
// monitor compilers they check.
namespace regcomb::testing {

inline bool battery_violated(std::span<const long> weight, long upper, long initial, long lower,
                             std::span<const ColorId> word) {
  long level = initial;
  for (auto c : word) {
    level = std::min(upper, level + weight[c]);
    if (level < lower) return true;
  }
  return false;
}

inline bool spillover_violated(std::span<const long> weight, long upper, long initial, long lower,
                               std::span<const ColorId> word) {
  long level = initial;
  for (auto c : word) {
    level += weight[c];
    if (level < lower || level > upper) return true;
  }
  return false;
}

/// Some complete window of `length` letters has only negative partial sums.
inline bool window_violated(std::span<const long> weight, std::size_t length, std::span<const ColorId> word) {
  for (std::size_t start = 0; start + length <= word.size(); ++start) {
    long sum = 0;
    bool all_negative = true;
    for (std::size_t j = 0; j < length && all_negative; ++j) {
      sum += weight[word[start + j]];
      all_negative = sum < 0;
    }
    if (all_negative) return true;
  }
  return false;
}

inline bool contains_any(std::span<const ColorId> bad, std::span<const ColorId> word) {
  return std::any_of(word.begin(), word.end(),
                     [&](ColorId c) { return std::find(bad.begin(), bad.end(), c) != bad.end(); });
}

}  // namespace regcomb::testing
