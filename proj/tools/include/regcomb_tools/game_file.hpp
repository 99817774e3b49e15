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

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "regcomb/arena.hpp"
#include "regcomb/condition.hpp"
#include "regcomb/monitor.hpp"

namespace regcomb::tools {

/// A game file after loading: the arena, the condition, and the vertex labels
/// used in printed output.
struct GameFile {
  Arena arena;
  CombinedCondition condition;
  std::vector<std::string> vertex_names;
};

/// Parses the JSON game format. Throws ParseError for malformed JSON or text
/// fields and ValidationError for content that does not form a legal game.
GameFile parse_game_file(std::string_view json_text);
GameFile load_game_file(const std::filesystem::path& path);

/// Per-color weights for the energy compilers.
WeightMap parse_weight_list(const ColorRegistry& registry, std::string_view text);

/// Compiles a directive such as "battery b=2", "spillover b=3 init=1",
/// "window l=2", "safety colors=a,b" or "reach colors=a". Energy and window
/// directives need `weights`.
MonitorDfa compile_directive(RegistryPtr registry, std::string_view directive,
                             const std::optional<WeightMap>& weights);

/// Reads a whole file. Throws ValidationError when it cannot be opened.
std::string read_file(const std::filesystem::path& path);

}  // namespace regcomb::tools
