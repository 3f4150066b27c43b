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

#ifndef RFTREWARD_TRACE_HPP_
#define RFTREWARD_TRACE_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rftreward::trace {

inline constexpr std::size_t kDefaultSpanTokens = 64;

/// A model response split into its `<think>` and `<answer>` blocks.
///
/// `format_ok` holds iff both blocks occur exactly once, think precedes answer,
/// and nothing but whitespace sits outside the two blocks.
struct ParsedTrace {
  std::optional<std::string> think;
  std::optional<std::string> answer;
  bool format_ok = false;
  bool extraneous = false;

  bool operator==(const ParsedTrace&) const = default;
};

/// Parses a raw response. Tag matching is case-sensitive and non-greedy (each
/// block ends at the first closing tag after its opening tag). Never throws.
ParsedTrace parse_trace(std::string_view response);

/// Canonical serialization: `<think>T</think><answer>A</answer>`.
std::string serialize_trace(std::string_view think, std::string_view answer);

/// The reasoning span taken to describe the visual input.
struct DescriptionSpan {
  std::vector<std::string> tokens;
  bool truncated = false;  // fewer than the requested number of tokens existed
  bool fallback = false;   // no sentence boundary; tokens taken from the start

  std::string text() const;
};

/// Byte offset one past the first sentence-terminating full stop: a '.'
/// followed by whitespace or end of text and not sitting between two digits.
std::optional<std::size_t> first_sentence_boundary(std::string_view text);

/// Up to `max_tokens` whitespace tokens following the first sentence boundary
/// of `think`, or from its start when there is no boundary.
DescriptionSpan extract_description_span(std::string_view think,
                                         std::size_t max_tokens = kDefaultSpanTokens);

}  // namespace rftreward::trace

#endif  // RFTREWARD_TRACE_HPP_
