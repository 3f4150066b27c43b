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

#ifndef RFTREWARD_SAMPLE_HPP_
#define RFTREWARD_SAMPLE_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace rftreward {

enum class AnswerType { kMultipleChoice, kNumerical, kFreeForm, kOcr, kRegression };

// Wire names: "mc", "num", "free", "ocr", "reg". Throws ConfigError on others.
AnswerType parse_answer_type(std::string_view name);
std::string_view answer_type_name(AnswerType type) noexcept;

enum class MediaKind { kVideo, kImage };

struct MediaRef {
  MediaKind kind = MediaKind::kVideo;
  std::vector<std::string> frames;  // video only
  std::string path;                 // image only

  // Frame references fed to the image encoder; an image is a single frame.
  std::vector<std::string> frame_refs() const;
};

struct Sample {
  std::string id;
  MediaRef media;
  std::string question;
  AnswerType answer_type = AnswerType::kMultipleChoice;
  std::string ground_truth;
  std::vector<std::string> options;
};

// Checks the per-type sample invariants (mc option range, numeric ground
// truth). Throws ContractViolation describing the first problem.
void validate_sample(const Sample& sample);

}  // namespace rftreward

#endif  // RFTREWARD_SAMPLE_HPP_
