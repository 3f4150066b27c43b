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
#include <sstream>

#include "oracles.hpp"
#include "rftreward/errors.hpp"
#include "rftreward/graders.hpp"
#include "rftreward/text.hpp"

using namespace rftreward;
using namespace rftreward::graders;

namespace {

Sample mc_sample(std::string gt) {
  Sample s;
  s.id = "mc";
  s.media.frames = {"f0"};
  s.answer_type = AnswerType::kMultipleChoice;
  s.ground_truth = std::move(gt);
  s.options = {"red", "green", "blue", "yellow"};
  return s;
}

std::vector<std::string> random_tokens(std::mt19937_64& rng, std::size_t max_len,
                                       std::size_t alphabet) {
  std::vector<std::string> t(rng() % (max_len + 1));
  for (auto& s : t) s = std::string(1, static_cast<char>('a' + rng() % alphabet));
  return t;
}

}  // namespace

TEST_CASE("multiple choice grading") {
  CHECK(grade(mc_sample("A"), "A") == 1.0);
  CHECK(grade(mc_sample("A"), "B") == 0.0);
  CHECK(grade(mc_sample("B"), "The answer is B") == 1.0);
  CHECK(grade(mc_sample("C"), "(C) blue") == 1.0);
  CHECK(grade(mc_sample("A"), "") == 0.0);
  CHECK(grade(mc_sample("A"), "Apple") == 0.0);
}

TEST_CASE("choice letter extraction") {
  CHECK(extract_choice_letter("B.") == 'B');
  CHECK(extract_choice_letter("I think D") == 'I');
  CHECK(extract_choice_letter("option: c") == std::nullopt);
  CHECK(extract_choice_letter("ABC") == std::nullopt);
  CHECK(extract_choice_letter("B2 or C") == 'C');
}

TEST_CASE("numeric grading") {
  CHECK(grade_numeric("42", "42.0") == 1.0);
  CHECK(grade_numeric("42", "41") == 0.0);
  CHECK(grade_numeric("1,000", "1000") == 1.0);
  CHECK(grade_numeric("3.5", "about 3.50 meters") == 1.0);
  CHECK(grade_numeric("-2", "-2.000") == 1.0);
  CHECK(grade_numeric("0", "0.0") == 1.0);
  CHECK(grade_numeric("420", "4.2e2") == 1.0);
  CHECK(grade_numeric("42", "no idea") == 0.0);
  CHECK(grade_numeric("0.1", "0.10000000000000001") == 0.0);
}

TEST_CASE("canonical decimals") {
  CHECK(parse_decimal("42") == parse_decimal("0042.00"));
  CHECK(parse_decimal("-0") == parse_decimal("0"));
  CHECK(parse_decimal("x")== std::nullopt);
  CHECK(parse_decimal("12.5 kg")->to_double() == 12.5);
}

TEST_CASE("rouge_l examples") {
  CHECK(rouge_l("the cat sat", "the cat sat") == 1.0);
  CHECK(rouge_l("a b", "c d") == 0.0);
  CHECK(rouge_l("the cat sat", "the cat ran") == doctest::Approx(2.0 / 3.0).epsilon(1e-4));
  CHECK(rouge_l("", "") == 1.0);
  CHECK(rouge_l("a", "") == 0.0);
  CHECK(rouge_l("The Cat", "the cat") == 1.0);
}

TEST_CASE("rouge_l matches exhaustive LCS oracle") {
  std::mt19937_64 rng(3);
  for (int n = 0; n < 500; ++n) {
    const auto a = random_tokens(rng, 8, 4);
    const auto b = random_tokens(rng, 8, 4);
    CHECK(lcs_length(a, b) == oracle::lcs_exhaustive(a, b));
    CHECK(rouge_l(a, b) == doctest::Approx(oracle::rouge_l(a, b)).epsilon(1e-12));
  }
}

TEST_CASE("wer_reward examples") {
  CHECK(wer_reward("hello world", "hello world") == 1.0);
  CHECK(wer_reward("hello world", "hello") == 0.5);
  CHECK(wer_reward("a", "x y z") == 0.0);
  CHECK(wer_reward("", "") == 1.0);
  CHECK(wer_reward("", "a") == 0.0);
  CHECK(wer_reward("Hello", "hello") == 0.0);
}

TEST_CASE("edit distance properties") {
  std::mt19937_64 rng(9);
  for (int n = 0; n < 300; ++n) {
    const auto a = random_tokens(rng, 7, 3);
    const auto b = random_tokens(rng, 7, 3);
    const auto c = random_tokens(rng, 7, 3);
    CHECK(edit_distance(a, b) == oracle::edit_distance(a, b));
    CHECK(edit_distance(a, b) == edit_distance(b, a));
    CHECK(edit_distance(a, c) <= edit_distance(a, b) + edit_distance(b, c));
    if (!a.empty()) {
      CHECK(wer_reward(a, a) == 1.0);
      CHECK(rouge_l(a, a) == 1.0);
    }
  }
}

TEST_CASE("regression grading") {
  CHECK(grade_regression("10", "10") == 1.0);
  CHECK(grade_regression("10", "9") == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(grade_regression("10", "0") == 0.0);
  CHECK(grade_regression("10", "25") == 0.0);
  CHECK(grade_regression("10", "n/a") == 0.0);
  CHECK(grade_regression("0", "0") == 1.0);
  CHECK_THROWS_AS(grade_regression("abc", "1"), ContractViolation);
}

TEST_CASE("regression grading is scale invariant") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> v(-50.0, 50.0);
  for (const double c : {-3.0, 0.5, 2.0, 1000.0}) {
    for (int n = 0; n < 50; ++n) {
      // Integers keep the scaled strings exact.
      const double y = std::round(v(rng));
      const double yhat = std::round(v(rng));
      if (y == 0.0) continue;
      const auto str = [](double x) {
        std::ostringstream os;
        os.precision(17);
        os << x;
        return os.str();
      };
      CHECK(grade_regression(str(c * y), str(c * yhat)) ==
            doctest::Approx(grade_regression(str(y), str(yhat))).epsilon(1e-12));
    }
  }
}

TEST_CASE("all graders stay in [0, 1]") {
  std::mt19937_64 rng(17);
  const std::vector<std::string> answers = {"", "A", "12", "-3.5", "x y z", "1,000", "B 7"};
  for (const auto type : {AnswerType::kMultipleChoice, AnswerType::kNumerical,
                          AnswerType::kFreeForm, AnswerType::kOcr, AnswerType::kRegression}) {
    Sample s = mc_sample("B");
    s.answer_type = type;
    if (type != AnswerType::kMultipleChoice) {
      s.options.clear();
      s.ground_truth = "12";
    }
    for (const auto& a : answers) {
      const double g = grade(s, a);
      CHECK(g >= 0.0);
      CHECK(g <= 1.0);
    }
  }
}

TEST_CASE("answer type names") {
  CHECK(parse_answer_type("ocr") == AnswerType::kOcr);
  CHECK(answer_type_name(AnswerType::kRegression) == "reg");
  CHECK_THROWS_AS(parse_answer_type("essay"), ConfigError);
}

TEST_CASE("sample validation") {
  Sample s = mc_sample("E");
  CHECK_THROWS_AS(validate_sample(s), ContractViolation);
  s.ground_truth = "D";
  CHECK_NOTHROW(validate_sample(s));
  s.options = {"only"};
  CHECK_THROWS_AS(validate_sample(s), ContractViolation);
}
