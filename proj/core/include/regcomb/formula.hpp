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
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "regcomb/common.hpp"

namespace regcomb {

/// Immutable propositional formula. Atoms are Inf(color) for Emerson–Lei
/// conditions, or the variables W_i / R_i of a combined condition (0-based
/// internally, printed 1-based). Constructors fold constants syntactically.
class Formula {
 public:
  enum class Kind : std::uint8_t { kTrue, kFalse, kInf, kW, kR, kNot, kAnd, kOr };

  Formula() : Formula(constant(true)) {}

  static Formula constant(bool value);
  static Formula inf(ColorId color);
  static Formula w(std::uint32_t index);
  static Formula r(std::uint32_t index);
  static Formula negate(Formula f);
  static Formula conj(std::vector<Formula> parts);
  static Formula disj(std::vector<Formula> parts);

  friend Formula operator!(Formula f) { return negate(std::move(f)); }
  friend Formula operator&(Formula a, Formula b) { return conj({std::move(a), std::move(b)}); }
  friend Formula operator|(Formula a, Formula b) { return disj({std::move(a), std::move(b)}); }

  Kind kind() const noexcept { return node_->kind; }
  std::uint32_t index() const noexcept { return node_->index; }
  const std::vector<Formula>& children() const noexcept { return node_->children; }
  bool is_atom() const noexcept {
    return kind() == Kind::kInf || kind() == Kind::kW || kind() == Kind::kR;
  }
  bool is_constant() const noexcept { return kind() == Kind::kTrue || kind() == Kind::kFalse; }
  bool is_true() const noexcept { return kind() == Kind::kTrue; }
  bool is_false() const noexcept { return kind() == Kind::kFalse; }

  /// Evaluates with `atom(f)` deciding each atom.
  template <typename AtomFn>
  bool eval(AtomFn&& atom) const {
    switch (kind()) {
      case Kind::kTrue: return true;
      case Kind::kFalse: return false;
      case Kind::kNot: return !children()[0].eval(atom);
      case Kind::kAnd:
        for (const auto& c : children())
          if (!c.eval(atom)) return false;
        return true;
      case Kind::kOr:
        for (const auto& c : children())
          if (c.eval(atom)) return true;
        return false;
      default: return atom(*this);
    }
  }

  /// Rebuilds the formula, replacing every atom by `f(atom)`; constants fold.
  Formula map_atoms(const std::function<Formula(const Formula&)>& f) const;

  /// Visits every atom occurrence.
  void for_each_atom(const std::function<void(const Formula&)>& f) const;

  bool mentions(Kind atom_kind, std::uint32_t index) const;

  std::string to_string(const std::function<std::string(const Formula&)>& atom_name) const;
  /// Prints variables as W1/R1 and Inf atoms as Inf(#c).
  std::string to_string() const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node {
    Kind kind;
    std::uint32_t index = 0;
    std::vector<Formula> children;
  };
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula make(Kind kind, std::uint32_t index, std::vector<Formula> children);

  std::shared_ptr<const Node> node_;
};

/// Resolves an identifier (and an optional parenthesized argument, as in
/// `Inf(a)`) to an atom. Should throw ParseError for unknown names.
using AtomResolver =
    std::function<Formula(std::string_view identifier, std::optional<std::string_view> argument)>;

/// Grammar: constants true/false, atoms via `resolve`, operators ! & | with
/// precedence ! > & > |, and parentheses. Throws ParseError.
Formula parse_formula(std::string_view text, const AtomResolver& resolve);

}  // namespace regcomb
