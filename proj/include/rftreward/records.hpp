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

#ifndef RFTREWARD_RECORDS_HPP_
#define RFTREWARD_RECORDS_HPP_

#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "rftreward/curate.hpp"
#include "rftreward/grpo.hpp"
#include "rftreward/rewards.hpp"
#include "rftreward/sample.hpp"

namespace rftreward::records {

// JSONL file schemas. Parsers take the 1-based line number so SchemaError can
// point at the offending line. Blank lines are skipped by the readers.

// Calls fn(line, line_no) for every non-blank line; a trailing '\r' is dropped.
void for_each_line(std::istream& in,
                   const std::function<void(std::string_view, std::size_t)>& fn);

struct SampleRecord {
  Sample sample;
  nlohmann::ordered_json extra = nlohmann::ordered_json::object();  // unknown fields
};

SampleRecord parse_sample(std::string_view line, std::size_t line_no);
std::string serialize_sample(const SampleRecord& record);
std::vector<SampleRecord> read_samples(std::istream& in);

struct RolloutText {
  std::string text;
  std::vector<double> logp_theta;
  std::vector<double> logp_old;
  std::vector<double> logp_ref;
};

struct RolloutRecord {
  std::string sample_id;
  std::vector<RolloutText> responses;
};

RolloutRecord parse_rollout(std::string_view line, std::size_t line_no);
std::string serialize_rollout(const RolloutRecord& record);
std::vector<RolloutRecord> read_rollouts(std::istream& in);

struct RewardReport {
  std::string sample_id;
  std::size_t response_index = 0;
  rewards::RewardBreakdown breakdown;
};

RewardReport parse_report(std::string_view line, std::size_t line_no);
std::string serialize_report(const RewardReport& report);
std::vector<RewardReport> read_reports(std::istream& in);

curate::CurationRecord parse_curation(std::string_view line, std::size_t line_no);
std::string serialize_curation(const curate::CurationRecord& record);
std::vector<curate::CurationRecord> read_curation(std::istream& in);

// Doubles are written with the shortest round-trip representation.
nlohmann::ordered_json to_json(const rewards::RewardBreakdown& breakdown);

}  // namespace rftreward::records

#endif  // RFTREWARD_RECORDS_HPP_
