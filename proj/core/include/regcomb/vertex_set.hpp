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

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include "regcomb/common.hpp"

namespace regcomb {

/// Dense bitset over vertex ids [0, universe). Iteration is ascending.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t universe, bool full = false)
      : universe_(universe), words_((universe + 63) / 64, full ? ~std::uint64_t{0} : 0) {
    if (full) trim();
  }
  VertexSet(std::size_t universe, std::initializer_list<VertexId> members) : VertexSet(universe) {
    for (auto v : members) insert(v);
  }

  std::size_t universe() const noexcept { return universe_; }

  bool contains(VertexId v) const noexcept {
    return v < universe_ && ((words_[v >> 6] >> (v & 63)) & 1U);
  }
  void insert(VertexId v) noexcept { words_[v >> 6] |= std::uint64_t{1} << (v & 63); }
  void erase(VertexId v) noexcept { words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }

  std::size_t count() const noexcept {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }
  bool empty() const noexcept {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

  VertexSet& operator|=(const VertexSet& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  VertexSet& operator&=(const VertexSet& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  VertexSet& operator-=(const VertexSet& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }
  friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
  friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
  friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }
  friend bool operator==(const VertexSet&, const VertexSet&) = default;

  VertexSet complement() const {
    VertexSet r(universe_);
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = ~words_[i];
    r.trim();
    return r;
  }

  bool intersects(const VertexSet& o) const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      auto w = words_[i];
      while (w) {
        const int b = std::countr_zero(w);
        f(static_cast<VertexId>(i * 64 + static_cast<std::size_t>(b)));
        w &= w - 1;
      }
    }
  }

  std::vector<VertexId> members() const {
    std::vector<VertexId> out;
    out.reserve(count());
    for_each([&](VertexId v) { out.push_back(v); });
    return out;
  }

 private:
  void trim() noexcept {
    if (universe_ % 64 != 0 && !words_.empty())
      words_.back() &= (std::uint64_t{1} << (universe_ % 64)) - 1;
  }

  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace regcomb
