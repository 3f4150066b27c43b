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

#include "rftreward/sample.hpp"

#include "rftreward/errors.hpp"
#include "rftreward/graders.hpp"
#include "rftreward/text.hpp"

namespace rftreward {

AnswerType parse_answer_type(std::string_view name) {
  if (name == "mc") return AnswerType::kMultipleChoice;
  if (name == "num") return AnswerType::kNumerical;
  if (name == "free") return AnswerType::kFreeForm;
  if (name == "ocr") return AnswerType::kOcr;
  if (name == "reg") return AnswerType::kRegression;
  throw ConfigError("unknown answer_type '" + std::string(name) + "'");
}

std::string_view answer_type_name(AnswerType type) noexcept {
  switch (type) {
    case AnswerType::kMultipleChoice: return "mc";
    case AnswerType::kNumerical: return "num";
    case AnswerType::kFreeForm: return "free";
    case AnswerType::kOcr: return "ocr";
    case AnswerType::kRegression: return "reg";
  }
  return "?";
}

std::vector<std::string> MediaRef::frame_refs() const {
  if (kind == MediaKind::kImage) return {path};
  return frames;
}

void validate_sample(const Sample& sample) {
  if (sample.media.kind == MediaKind::kVideo && sample.media.frames.empty()) {
    throw ContractViolation("video media needs at least one frame");
  }
  if (sample.media.kind == MediaKind::kImage && sample.media.path.empty()) {
    throw ContractViolation("image media needs a path");
  }
  switch (sample.answer_type) {
    case AnswerType::kMultipleChoice: {
      if (sample.options.size() < 2) {
        throw ContractViolation("mc sample needs at least 2 options");
      }
      const auto gt = text::trim(sample.ground_truth);
      if (gt.size() != 1 || gt[0] < 'A' || gt[0] > 'Z' ||
          static_cast<std::size_t>(gt[0] - 'A') >= sample.options.size()) {
        throw ContractViolation("mc ground_truth must be a single option letter in range");
      }
      break;
    }
    case AnswerType::kNumerical:
    case AnswerType::kRegression:
      if (!graders::parse_decimal(sample.ground_truth)) {
        throw ContractViolation("ground_truth '" + sample.ground_truth + "' is not a number");
      }
      break;
    case AnswerType::kFreeForm:
    case AnswerType::kOcr:
      break;
  }
}

}  // namespace rftreward
