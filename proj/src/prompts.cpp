// Copyright 2026 The rftreward Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rftreward/prompts.hpp"

#include <string>

#include "prompt_table.hpp"
#include "rftreward/errors.hpp"

namespace rftreward::prompts {

std::string_view asset(std::string_view name) {
  for (std::size_t i = 0; i < detail::kPromptAssetCount; ++i) {
    if (detail::kPromptAssets[i].name == name) return detail::kPromptAssets[i].text;
  }
  throw ConfigError("unknown prompt asset '" + std::string(name) + "'");
}

std::vector<std::string_view> asset_names() {
  std::vector<std::string_view> names;
  for (std::size_t i = 0; i < detail::kPromptAssetCount; ++i) {
    names.push_back(detail::kPromptAssets[i].name);
  }
  return names;
}

}  // namespace rftreward::prompts
