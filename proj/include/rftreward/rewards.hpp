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

#ifndef RFTREWARD_REWARDS_HPP_
#define RFTREWARD_REWARDS_HPP_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rftreward/embedding.hpp"
#include "rftreward/sample.hpp"
#include "rftreward/semantic.hpp"
#include "rftreward/trace.hpp"

namespace rftreward::rewards {

/// Per-response reward record.
///
/// total = format + accuracy + (gate_open ? semantic : 0) and
/// gate_open <=> accuracy > 0. When the gate is closed the semantic reward is
/// never computed and is reported as 0.
struct RewardBreakdown {
  double format = 0.0;
  double accuracy = 0.0;
  double semantic = 0.0;
  double total = 0.0;
  bool gate_open = false;

  bool operator==(const RewardBreakdown&) const = default;
};

double format_reward(const trace::ParsedTrace& parsed);

// Gated sum. Throws ContractViolation unless rf is 0 or 1 and ra, rs lie in
// [0, 1].
RewardBreakdown total_reward(double rf, double ra, double rs);

/// Full pipeline for one response: parse, grade the answer block (0 when the
/// block is missing), then score semantic consistency only if the accuracy
/// gate is open. Provider failures surface as ScoringError with the sample id.
RewardBreakdown score_response(const Sample& sample, std::string_view response,
                               const EmbeddingProvider& provider,
                               const semantic::SemanticConfig& cfg);

struct ScoringJob {
  const Sample* sample = nullptr;
  std::string_view response;
};

struct BatchOptions {
  std::size_t threads = 1;
  std::size_t text_batch = 64;  // spans per provider call
};

/// Scores many responses at once. Results are aligned with `jobs` and equal,
/// bit for bit, to calling score_response on each job, for any thread count.
/// Span texts are embedded in batches, and each sample's video embedding is
/// computed once.
std::vector<RewardBreakdown> score_batch(std::span<const ScoringJob> jobs,
                                         const EmbeddingProvider& provider,
                                         const semantic::SemanticConfig& cfg,
                                         const BatchOptions& options = {});

}  // namespace rftreward::rewards

#endif  // RFTREWARD_REWARDS_HPP_
