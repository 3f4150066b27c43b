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

#include "rftreward/graders.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <regex>

#include "rftreward/errors.hpp"
#include "rftreward/text.hpp"

namespace rftreward::graders {
namespace {

bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }

// Removes commas that sit between two digits ("1,000" -> "1000").
std::string drop_thousands_separators(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == ',' && i > 0 && i + 1 < s.size() && text::is_digit(s[i - 1]) &&
        text::is_digit(s[i + 1])) {
      continue;
    }
    out += s[i];
  }
  return out;
}

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

}  // namespace

std::optional<char> extract_choice_letter(std::string_view t) {
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!is_upper(t[i])) continue;
    const bool left_ok = i == 0 || !text::is_alnum(t[i - 1]);
    const bool right_ok = i + 1 == t.size() || !text::is_alnum(t[i + 1]);
    if (left_ok && right_ok) return t[i];
  }
  return std::nullopt;
}

double grade_multiple_choice(std::string_view ground_truth, std::string_view answer) {
  const auto gt = extract_choice_letter(ground_truth);
  const auto got = extract_choice_letter(answer);
  return gt && got && *gt == *got ? 1.0 : 0.0;
}

double CanonicalDecimal::to_double() const {
  if (digits.empty()) return 0.0;
  const std::string repr = std::string(negative ? "-" : "") + "0." + digits + "e" +
                           std::to_string(exponent);
  return std::strtod(repr.c_str(), nullptr);
}

std::optional<CanonicalDecimal> parse_decimal(std::string_view input) {
  static const std::regex kNumber(R"(([-+]?)(\d*)(?:\.(\d*))?(?:[eE]([-+]?\d+))?)");
  const std::string s = drop_thousands_separators(input);
  // std::regex_search would accept an empty match, so walk candidate starts.
  for (std::size_t start = 0; start < s.size(); ++start) {
    const char c = s[start];
    const bool can_start = text::is_digit(c) || c == '.' || c == '-' || c == '+';
    if (!can_start) continue;
    std::smatch m;
    const std::string rest = s.substr(start);
    if (!std::regex_search(rest, m, kNumber, std::regex_constants::match_continuous)) continue;
    const std::string int_part = m[2].str();
    const std::string frac_part = m[3].str();
    if (int_part.empty() && frac_part.empty()) continue;

    CanonicalDecimal d;
    d.negative = m[1].str() == "-";
    long exp10 = 0;
    if (m[4].matched) {
      try {
        exp10 = std::stol(m[4].str());
      } catch (const std::out_of_range&) {
        continue;
      }
    }
    std::string digits = int_part + frac_part;
    long exponent = static_cast<long>(int_part.size()) + exp10;
    const auto first = digits.find_first_not_of('0');
    if (first == std::string::npos) return CanonicalDecimal{};  // zero, sign dropped
    exponent -= static_cast<long>(first);
    digits.erase(0, first);
    digits.erase(digits.find_last_not_of('0') + 1);
    d.digits = std::move(digits);
    d.exponent = exponent;
    return d;
  }
  return std::nullopt;
}

double grade_numeric(std::string_view ground_truth, std::string_view answer) {
  const auto gt = parse_decimal(ground_truth);
  const auto got = parse_decimal(answer);
  return gt && got && *gt == *got ? 1.0 : 0.0;
}

std::size_t lcs_length(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

double rouge_l(const std::vector<std::string>& reference,
               const std::vector<std::string>& hypothesis) {
  if (reference.empty() && hypothesis.empty()) return 1.0;
  if (reference.empty() || hypothesis.empty()) return 0.0;
  const auto lcs = static_cast<double>(lcs_length(reference, hypothesis));
  if (lcs == 0.0) return 0.0;
  const double precision = lcs / static_cast<double>(hypothesis.size());
  const double recall = lcs / static_cast<double>(reference.size());
  return clamp01(2.0 * precision * recall / (precision + recall));
}

double rouge_l(std::string_view reference, std::string_view hypothesis) {
  return rouge_l(text::metric_tokens(reference), text::metric_tokens(hypothesis));
}

std::size_t edit_distance(const std::vector<std::string>& ref,
                          const std::vector<std::string>& hyp) {
  std::vector<std::size_t> prev(hyp.size() + 1), cur(hyp.size() + 1);
  for (std::size_t j = 0; j <= hyp.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= ref.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= hyp.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      cur[j] = std::min({sub, prev[j] + 1, cur[j - 1] + 1});
    }
    std::swap(prev, cur);
  }
  return prev[hyp.size()];
}

double wer_reward(const std::vector<std::string>& reference,
                  const std::vector<std::string>& hypothesis) {
  const double edits = static_cast<double>(edit_distance(reference, hypothesis));
  const double denom = static_cast<double>(std::max<std::size_t>(1, reference.size()));
  return std::max(0.0, 1.0 - edits / denom);
}

double wer_reward(std::string_view reference, std::string_view hypothesis) {
  return wer_reward(text::split_whitespace(reference), text::split_whitespace(hypothesis));
}

double grade_regression(std::string_view ground_truth, std::string_view answer) {
  const auto gt = parse_decimal(ground_truth);
  if (!gt) {
    throw ContractViolation("regression ground truth '" + std::string(ground_truth) +
                            "' is not a number");
  }
  const auto got = parse_decimal(answer);
  if (!got) return 0.0;
  const double y = gt->to_double();
  const double y_hat = got->to_double();
  const double rel = std::abs(y_hat - y) / std::max(std::abs(y), kRegressionDenominatorFloor);
  if (!std::isfinite(rel)) return 0.0;
  return std::max(0.0, 1.0 - rel);
}

double grade(const Sample& sample, std::string_view answer_text) {
  switch (sample.answer_type) {
    case AnswerType::kMultipleChoice:
      return grade_multiple_choice(sample.ground_truth, answer_text);
    case AnswerType::kNumerical:
      return grade_numeric(sample.ground_truth, answer_text);
    case AnswerType::kFreeForm:
      return rouge_l(sample.ground_truth, answer_text);
    case AnswerType::kOcr:
      return wer_reward(sample.ground_truth, answer_text);
    case AnswerType::kRegression:
      return grade_regression(sample.ground_truth, answer_text);
  }
  throw ConfigError("unknown answer type");
}

}  // namespace rftreward::graders
