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

#ifndef RFTREWARD_TEXT_HPP_
#define RFTREWARD_TEXT_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace rftreward::text {

bool is_space(char c) noexcept;
bool is_digit(char c) noexcept;
bool is_alnum(char c) noexcept;

std::vector<std::string> split_whitespace(std::string_view s);
std::string join(const std::vector<std::string>& tokens, std::string_view sep = " ");
std::string to_lower(std::string_view s);
std::string_view trim(std::string_view s) noexcept;
bool is_blank(std::string_view s) noexcept;

// Lowercased whitespace tokens; the tokenization shared by the text metrics.
std::vector<std::string> metric_tokens(std::string_view s);

// 64-bit FNV-1a. Stable across platforms; used for stub embeddings and digests.
std::uint64_t fnv1a64(std::string_view bytes,
                      std::uint64_t basis = 0xcbf29ce484222325ULL) noexcept;
std::string hex_digest(std::string_view bytes);

}  // namespace rftreward::text

#endif  // RFTREWARD_TEXT_HPP_
