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

#ifndef RFTREWARD_PROMPT_TABLE_HPP_
#define RFTREWARD_PROMPT_TABLE_HPP_

#include <cstddef>
#include <string_view>

namespace rftreward::prompts::detail {

struct PromptAsset {
  std::string_view name;
  std::string_view text;
};

// Defined in the build-generated prompt_assets.cpp.
extern const PromptAsset kPromptAssets[];
extern const std::size_t kPromptAssetCount;

}  // namespace rftreward::prompts::detail

#endif  // RFTREWARD_PROMPT_TABLE_HPP_
