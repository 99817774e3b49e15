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

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "regcomb/common.hpp"

namespace regcomb {

/// The fixed, ordered set of color labels. A color is an index into this list.
class ColorRegistry {
 public:
  /// Throws ValidationError on duplicate labels or an empty list.
  explicit ColorRegistry(std::vector<std::string> names);

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(ColorId c) const { return names_.at(c); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<ColorId> find(std::string_view name) const;
  /// Throws ValidationError for unknown labels.
  ColorId at(std::string_view name) const;

  friend bool operator==(const ColorRegistry& a, const ColorRegistry& b) {
    return a.names_ == b.names_;
  }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, ColorId> index_;
};

using RegistryPtr = std::shared_ptr<const ColorRegistry>;

inline RegistryPtr make_registry(std::vector<std::string> names) {
  return std::make_shared<const ColorRegistry>(std::move(names));
}

/// Same registry object or equal label lists.
inline bool same_registry(const RegistryPtr& a, const RegistryPtr& b) {
  return a == b || (a && b && *a == *b);
}

}  // namespace regcomb
