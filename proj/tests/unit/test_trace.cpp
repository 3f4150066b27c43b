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

#include <doctest.h>

#include <random>

#include "rftreward/errors.hpp"
#include "rftreward/text.hpp"
#include "rftreward/trace.hpp"

using namespace rftreward;
using trace::extract_description_span;
using trace::parse_trace;

TEST_CASE("parse_trace canonical response") {
  const auto p = parse_trace("<think>reasoning</think><answer>A</answer>");
  REQUIRE(p.think);
  REQUIRE(p.answer);
  CHECK(*p.think == "reasoning");
  CHECK(*p.answer == "A");
  CHECK(p.format_ok);
  CHECK_FALSE(p.extraneous);
}

TEST_CASE("parse_trace missing answer block") {
  const auto p = parse_trace("<think>x</think>");
  CHECK(p.think == std::optional<std::string>("x"));
  CHECK_FALSE(p.answer);
  CHECK_FALSE(p.format_ok);
}

TEST_CASE("parse_trace preamble is extraneous") {
  const auto p = parse_trace("preamble <think>x</think><answer>A</answer>");
  CHECK(p.extraneous);
  CHECK_FALSE(p.format_ok);
  CHECK(*p.answer == "A");
}

TEST_CASE("parse_trace structural failures") {
  SUBCASE("answer before think") {
    CHECK_FALSE(parse_trace("<answer>A</answer><think>x</think>").format_ok);
  }
  SUBCASE("duplicated think block") {
    CHECK_FALSE(parse_trace("<think>a</think><think>b</think><answer>A</answer>").format_ok);
  }
  SUBCASE("case-sensitive tags") {
    const auto p = parse_trace("<THINK>a</THINK><answer>A</answer>");
    CHECK_FALSE(p.think);
    CHECK_FALSE(p.format_ok);
  }
  SUBCASE("whitespace around blocks is allowed") {
    CHECK(parse_trace("\n <think>a</think>\n<answer> B </answer>\n").format_ok);
  }
  SUBCASE("non-greedy match") {
    const auto p = parse_trace("<think>a</think> junk </think><answer>A</answer>");
    CHECK(*p.think == "a");
    CHECK_FALSE(p.format_ok);
  }
  SUBCASE("empty input") {
    const auto p = parse_trace("");
    CHECK_FALSE(p.format_ok);
    CHECK_FALSE(p.extraneous);
  }
}

TEST_CASE("parse_trace round trip and exclusivity properties") {
  std::mt19937_64 rng(11);
  const std::vector<std::string> pieces = {"<think>", "</think>", "<answer>", "</answer>",
                                           "x", " ", "A", ".", "\n", "yes no"};
  std::uniform_int_distribution<std::size_t> pick(0, pieces.size() - 1);
  std::uniform_int_distribution<int> len(0, 10);
  for (int n = 0; n < 3000; ++n) {
    std::string s;
    for (int i = len(rng); i > 0; --i) s += pieces[pick(rng)];
    const auto p = parse_trace(s);
    CHECK_FALSE((p.format_ok && p.extraneous));
    if (p.think && p.answer && p.think->find('<') == std::string::npos &&
        p.answer->find('<') == std::string::npos) {
      const auto again = parse_trace(trace::serialize_trace(*p.think, *p.answer));
      CHECK(*again.think == *p.think);
      CHECK(*again.answer == *p.answer);
      CHECK(again.format_ok);
      CHECK(parse_trace(trace::serialize_trace(*again.think, *again.answer)) == again);
    }
  }
}

TEST_CASE("description span follows the first full stop") {
  const auto s = extract_description_span("The question asks X. The video shows a cat on a table.", 4);
  CHECK(s.tokens == std::vector<std::string>{"The", "video", "shows", "a"});
  CHECK_FALSE(s.fallback);
  CHECK_FALSE(s.truncated);
}

TEST_CASE("description span without boundary falls back") {
  const auto s = extract_description_span("no boundary here", 8);
  CHECK(s.tokens == std::vector<std::string>{"no", "boundary", "here"});
  CHECK(s.fallback);
  CHECK(s.truncated);
}

TEST_CASE("decimal point is not a sentence boundary") {
  const auto s = extract_description_span("value 3.14 appears. after it", 2);
  CHECK(s.tokens == std::vector<std::string>{"after", "it"});
  CHECK_FALSE(s.fallback);
}

TEST_CASE("description span edge cases") {
  SUBCASE("empty think") {
    const auto s = extract_description_span("", 64);
    CHECK(s.tokens.empty());
    CHECK(s.fallback);
  }
  SUBCASE("period at end of text") {
    const auto s = extract_description_span("only one sentence.", 4);
    CHECK(s.tokens.empty());
    CHECK_FALSE(s.fallback);
    CHECK(s.truncated);
  }
  SUBCASE("M must be positive") {
    CHECK_THROWS_AS(extract_description_span("a. b", 0), ContractViolation);
  }
  SUBCASE("default M") { CHECK(trace::kDefaultSpanTokens == 64); }
}

TEST_CASE("description span is a bounded contiguous token run") {
  std::mt19937_64 rng(5);
  const std::vector<std::string> words = {"a", "b.", "3.5", "c", "d.", "e", "."};
  std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
  for (int n = 0; n < 500; ++n) {
    std::string think;
    const int len = static_cast<int>(rng() % 20);
    for (int i = 0; i < len; ++i) think += words[pick(rng)] + " ";
    const std::size_t m = 1 + rng() % 6;
    const auto span = extract_description_span(think, m);
    CHECK(span.tokens.size() <= m);
    const auto all = text::split_whitespace(think);
    bool found = span.tokens.empty();
    for (std::size_t start = 0; !found && start + span.tokens.size() <= all.size(); ++start) {
      found = std::equal(span.tokens.begin(), span.tokens.end(), all.begin() + start);
    }
    CHECK(found);
  }
}
