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

#include "rftreward/trace.hpp"

#include "rftreward/errors.hpp"
#include "rftreward/text.hpp"

namespace rftreward::trace {
namespace {

struct Block {
  std::size_t open = std::string_view::npos;  // offset of the opening tag
  std::size_t end = std::string_view::npos;   // one past the closing tag
  std::string content;
  bool unique = false;
};

std::size_t count_occurrences(std::string_view hay, std::string_view needle) {
  std::size_t n = 0;
  for (auto pos = hay.find(needle); pos != std::string_view::npos;
       pos = hay.find(needle, pos + needle.size())) {
    ++n;
  }
  return n;
}

std::optional<Block> find_block(std::string_view s, std::string_view open_tag,
                                std::string_view close_tag) {
  const auto open = s.find(open_tag);
  if (open == std::string_view::npos) return std::nullopt;
  const auto body = open + open_tag.size();
  const auto close = s.find(close_tag, body);
  if (close == std::string_view::npos) return std::nullopt;
  Block b;
  b.open = open;
  b.end = close + close_tag.size();
  b.content = std::string(s.substr(body, close - body));
  b.unique = count_occurrences(s, open_tag) == 1 && count_occurrences(s, close_tag) == 1;
  return b;
}

}  // namespace

ParsedTrace parse_trace(std::string_view response) {
  ParsedTrace out;
  const auto think = find_block(response, "<think>", "</think>");
  const auto answer = find_block(response, "<answer>", "</answer>");
  if (think) out.think = think->content;
  if (answer) out.answer = answer->content;

  // Mark bytes covered by the located blocks; anything else must be blank.
  std::vector<bool> covered(response.size(), false);
  for (const auto* b : {think ? &*think : nullptr, answer ? &*answer : nullptr}) {
    if (!b) continue;
    for (std::size_t i = b->open; i < b->end; ++i) covered[i] = true;
  }
  for (std::size_t i = 0; i < response.size(); ++i) {
    if (!covered[i] && !text::is_space(response[i])) {
      out.extraneous = true;
      break;
    }
  }

  out.format_ok = think && answer && think->unique && answer->unique &&
                  think->end <= answer->open && !out.extraneous;
  return out;
}

std::string serialize_trace(std::string_view think, std::string_view answer) {
  std::string s;
  s.reserve(think.size() + answer.size() + 32);
  s += "<think>";
  s += think;
  s += "</think><answer>";
  s += answer;
  s += "</answer>";
  return s;
}

std::string DescriptionSpan::text() const { return text::join(tokens, " "); }

std::optional<std::size_t> first_sentence_boundary(std::string_view t) {
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] != '.') continue;
    // Requiring whitespace or end-of-text after the period also excludes
    // decimal points such as "3.14".
    if (i + 1 < t.size() && !text::is_space(t[i + 1])) continue;
    return i + 1;
  }
  return std::nullopt;
}

DescriptionSpan extract_description_span(std::string_view think, std::size_t max_tokens) {
  if (max_tokens == 0) throw ContractViolation("description span length must be >= 1");
  DescriptionSpan span;
  std::string_view source = think;
  if (const auto boundary = first_sentence_boundary(think)) {
    source = think.substr(*boundary);
  } else {
    span.fallback = true;
  }
  auto tokens = text::split_whitespace(source);
  span.truncated = tokens.size() < max_tokens;
  if (tokens.size() > max_tokens) tokens.resize(max_tokens);
  span.tokens = std::move(tokens);
  return span;
}

}  // namespace rftreward::trace
