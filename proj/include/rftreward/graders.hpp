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

#ifndef RFTREWARD_GRADERS_HPP_
#define RFTREWARD_GRADERS_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rftreward/sample.hpp"

namespace rftreward::graders {

// Denominator floor for the relative error of regression answers.
inline constexpr double kRegressionDenominatorFloor = 1e-9;

/// Accuracy reward R_a for `answer_text` (the answer-block content) using the
/// metric of the sample's answer type. Always in [0, 1].
double grade(const Sample& sample, std::string_view answer_text);

/// First standalone capital letter A-Z, i.e. one not adjacent to another
/// letter or digit: "The answer is B" -> 'B', "(C)" -> 'C'.
std::optional<char> extract_choice_letter(std::string_view text);

double grade_multiple_choice(std::string_view ground_truth, std::string_view answer);

/// A decimal number reduced to sign, significant digits and exponent, so that
/// "42", "42.0" and "4.2e1" compare equal without floating-point rounding.
struct CanonicalDecimal {
  bool negative = false;
  std::string digits;  // no leading or trailing zeros; empty for zero
  long exponent = 0;   // value = 0.digits * 10^exponent

  bool operator==(const CanonicalDecimal&) const = default;
  double to_double() const;
};

/// First decimal number in `text` after dropping thousands separators; unit
/// suffixes and surrounding words are ignored.
std::optional<CanonicalDecimal> parse_decimal(std::string_view text);

double grade_numeric(std::string_view ground_truth, std::string_view answer);

/// ROUGE-L F1 over token lists (callers lowercase; see `text::metric_tokens`).
/// Both empty -> 1, exactly one empty -> 0.
double rouge_l(const std::vector<std::string>& reference,
               const std::vector<std::string>& hypothesis);
double rouge_l(std::string_view reference, std::string_view hypothesis);

std::size_t lcs_length(const std::vector<std::string>& a, const std::vector<std::string>& b);

/// Word-level Levenshtein distance with unit costs.
std::size_t edit_distance(const std::vector<std::string>& reference,
                          const std::vector<std::string>& hypothesis);

/// max(0, 1 - WER), WER = edit distance / max(1, |reference|).
double wer_reward(const std::vector<std::string>& reference,
                  const std::vector<std::string>& hypothesis);
double wer_reward(std::string_view reference, std::string_view hypothesis);

/// max(0, 1 - |answer - gt| / max(|gt|, 1e-9)); unparseable answer -> 0.
/// Throws ContractViolation when the ground truth is not a number.
double grade_regression(std::string_view ground_truth, std::string_view answer);

}  // namespace rftreward::graders

#endif  // RFTREWARD_GRADERS_HPP_
