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

#include "regcomb/formula.hpp"

#include <cctype>

namespace regcomb {

Formula Formula::make(Kind kind, std::uint32_t index, std::vector<Formula> children) {
  return Formula(std::make_shared<const Node>(Node{kind, index, std::move(children)}));
}

Formula Formula::constant(bool value) {
  static const Formula t = make(Kind::kTrue, 0, {});
  static const Formula f = make(Kind::kFalse, 0, {});
  return value ? t : f;
}

Formula Formula::inf(ColorId color) { return make(Kind::kInf, color, {}); }
Formula Formula::w(std::uint32_t index) { return make(Kind::kW, index, {}); }
Formula Formula::r(std::uint32_t index) { return make(Kind::kR, index, {}); }

Formula Formula::negate(Formula f) {
  if (f.is_constant()) return constant(!f.is_true());
  if (f.kind() == Kind::kNot) return f.children()[0];
  return make(Kind::kNot, 0, {std::move(f)});
}

namespace {

// Shared folding for n-ary connectives: `absorbing` short-circuits, `neutral`
// disappears, nested nodes of the same kind are flattened.
Formula fold(Formula::Kind kind, std::vector<Formula> parts, bool absorbing_value,
             const std::function<Formula(std::vector<Formula>)>& make_node) {
  std::vector<Formula> kept;
  for (auto& p : parts) {
    if (p.is_constant()) {
      if (p.is_true() == absorbing_value) return Formula::constant(absorbing_value);
      continue;
    }
    if (p.kind() == kind) {
      for (const auto& c : p.children()) kept.push_back(c);
    } else {
      kept.push_back(std::move(p));
    }
  }
  if (kept.empty()) return Formula::constant(!absorbing_value);
  if (kept.size() == 1) return kept.front();
  return make_node(std::move(kept));
}

}  // namespace

Formula Formula::conj(std::vector<Formula> parts) {
  return fold(Kind::kAnd, std::move(parts), false,
              [](std::vector<Formula> k) { return make(Kind::kAnd, 0, std::move(k)); });
}

Formula Formula::disj(std::vector<Formula> parts) {
  return fold(Kind::kOr, std::move(parts), true,
              [](std::vector<Formula> k) { return make(Kind::kOr, 0, std::move(k)); });
}

Formula Formula::map_atoms(const std::function<Formula(const Formula&)>& f) const {
  switch (kind()) {
    case Kind::kTrue:
    case Kind::kFalse: return *this;
    case Kind::kNot: return negate(children()[0].map_atoms(f));
    case Kind::kAnd:
    case Kind::kOr: {
      std::vector<Formula> parts;
      parts.reserve(children().size());
      for (const auto& c : children()) parts.push_back(c.map_atoms(f));
      return kind() == Kind::kAnd ? conj(std::move(parts)) : disj(std::move(parts));
    }
    default: return f(*this);
  }
}

void Formula::for_each_atom(const std::function<void(const Formula&)>& f) const {
  if (is_atom()) {
    f(*this);
    return;
  }
  for (const auto& c : children()) c.for_each_atom(f);
}

bool Formula::mentions(Kind atom_kind, std::uint32_t idx) const {
  bool found = false;
  for_each_atom([&](const Formula& a) { found |= a.kind() == atom_kind && a.index() == idx; });
  return found;
}

std::string Formula::to_string(const std::function<std::string(const Formula&)>& atom_name) const {
  switch (kind()) {
    case Kind::kTrue: return "true";
    case Kind::kFalse: return "false";
    case Kind::kNot: {
      const auto& c = children()[0];
      auto inner = c.to_string(atom_name);
      return c.is_atom() || c.is_constant() || c.kind() == Kind::kNot ? "!" + inner
                                                                      : "!(" + inner + ")";
    }
    case Kind::kAnd:
    case Kind::kOr: {
      std::string out;
      const char* op = kind() == Kind::kAnd ? " & " : " | ";
      for (std::size_t i = 0; i < children().size(); ++i) {
        const auto& c = children()[i];
        auto s = c.to_string(atom_name);
        // Flattening guarantees an Or child only appears under an And.
        if (c.kind() == Kind::kOr) s = "(" + s + ")";
        if (i) out += op;
        out += s;
      }
      return out;
    }
    default: return atom_name(*this);
  }
}

std::string Formula::to_string() const {
  return to_string([](const Formula& a) {
    switch (a.kind()) {
      case Kind::kW: return "W" + std::to_string(a.index() + 1);
      case Kind::kR: return "R" + std::to_string(a.index() + 1);
      default: return "Inf(#" + std::to_string(a.index()) + ")";
    }
  });
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.index() != b.index() || a.children().size() != b.children().size())
    return false;
  for (std::size_t i = 0; i < a.children().size(); ++i)
    if (!(a.children()[i] == b.children()[i])) return false;
  return true;
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const AtomResolver& resolve) : text_(text), resolve_(resolve) {}

  Formula parse() {
    auto f = parse_or();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("formula '" + std::string(text_) + "' at offset " + std::to_string(pos_) +
                     ": " + what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Formula parse_or() {
    std::vector<Formula> parts{parse_and()};
    while (accept('|')) parts.push_back(parse_and());
    return Formula::disj(std::move(parts));
  }

  Formula parse_and() {
    std::vector<Formula> parts{parse_unary()};
    while (accept('&')) parts.push_back(parse_unary());
    return Formula::conj(std::move(parts));
  }

  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-' ||
           c == '+' || c == ':' || c == '\'';
  }

  Formula parse_unary() {
    if (accept('!')) return Formula::negate(parse_unary());
    if (accept('(')) {
      auto f = parse_or();
      if (!accept(')')) fail("expected ')'");
      return f;
    }
    skip_space();
    const auto start = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    if (start == pos_) fail(pos_ < text_.size() ? "unexpected '" + std::string(1, text_[pos_]) + "'"
                                                : "unexpected end of input");
    const auto ident = text_.substr(start, pos_ - start);
    if (ident == "true") return Formula::constant(true);
    if (ident == "false") return Formula::constant(false);
    std::optional<std::string_view> arg;
    if (pos_ < text_.size() && text_[pos_] == '(') {
      ++pos_;
      const auto close = text_.find(')', pos_);
      if (close == std::string_view::npos) fail("expected ')'");
      auto inner = text_.substr(pos_, close - pos_);
      while (!inner.empty() && std::isspace(static_cast<unsigned char>(inner.front())))
        inner.remove_prefix(1);
      while (!inner.empty() && std::isspace(static_cast<unsigned char>(inner.back())))
        inner.remove_suffix(1);
      if (inner.empty()) fail("empty argument");
      arg = inner;
      pos_ = close + 1;
    }
    return resolve_(ident, arg);
  }

  std::string_view text_;
  const AtomResolver& resolve_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text, const AtomResolver& resolve) {
  return Parser(text, resolve).parse();
}

}  // namespace regcomb
