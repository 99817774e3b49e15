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

#include "regcomb/colors.hpp"

namespace regcomb {

ColorRegistry::ColorRegistry(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.empty()) throw ValidationError("color registry must contain at least one color");
  for (ColorId c = 0; c < names_.size(); ++c) {
    if (names_[c].empty()) throw ValidationError("empty color label");
    if (!index_.emplace(names_[c], c).second)
      throw ValidationError("duplicate color label '" + names_[c] + "'");
  }
}

std::optional<ColorId> ColorRegistry::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

ColorId ColorRegistry::at(std::string_view name) const {
  if (auto c = find(name)) return *c;
  throw ValidationError("unknown color '" + std::string(name) + "'");
}

}  // namespace regcomb
