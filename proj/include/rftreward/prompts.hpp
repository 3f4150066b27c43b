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

#ifndef RFTREWARD_PROMPTS_HPP_
#define RFTREWARD_PROMPTS_HPP_

#include <string_view>
#include <vector>

namespace rftreward::prompts {

// Templates are versioned text files under assets/prompts/<version>/,
// compiled into the library.
inline constexpr std::string_view kVersion = "v1";

// Asset text by file stem, e.g. "cog_system". Throws ConfigError if unknown.
std::string_view asset(std::string_view name);
std::vector<std::string_view> asset_names();

}  // namespace rftreward::prompts

#endif  // RFTREWARD_PROMPTS_HPP_
