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

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace regcomb {

using VertexId = std::uint32_t;
using ColorId = std::uint32_t;
using StateId = std::uint32_t;
using MemoryId = std::uint32_t;

inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();

enum class Player : std::uint8_t { kOne = 1, kTwo = 2 };

constexpr Player opponent(Player p) noexcept {
  return p == Player::kOne ? Player::kTwo : Player::kOne;
}

constexpr int player_number(Player p) noexcept { return static_cast<int>(p); }

inline std::string to_string(Player p) { return p == Player::kOne ? "P1" : "P2"; }

/// Raised when an internal soundness check fails. Never caused by user input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Raised for structurally invalid inputs (bad arenas, out-of-range indices).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised for malformed text (formulas, game files, strategy tables).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace regcomb
