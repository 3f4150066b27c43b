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

#ifndef RFTREWARD_SEMANTIC_HPP_
#define RFTREWARD_SEMANTIC_HPP_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rftreward/embedding.hpp"
#include "rftreward/trace.hpp"

namespace rftreward::semantic {

struct SemanticConfig {
  double w = 2.0;                                     // scaling constant
  std::size_t span_tokens = trace::kDefaultSpanTokens;  // M
  std::size_t frames = 16;                            // F

  // Throws ConfigError unless w > 0, M >= 1 and F >= 1.
  void validate() const;
};

// Evenly spaced subset of at most `count` frames, order preserved.
std::vector<std::string> uniform_frame_sample(std::span<const std::string> frames,
                                              std::size_t count);

// Normalized mean of unit vectors. The sum is taken in sorted order so the
// result does not depend on input order. Throws ProviderError when the mean
// vanishes ("degenerate video embedding").
Embedding mean_direction(std::span<const Embedding> vectors);

Embedding video_embedding(std::span<const std::string> frames, const EmbeddingProvider& provider);

// min(1, w * max(cos, 0)).
double reward_from_cosine(double cos, double w);
double semantic_reward(const Embedding& text_vec, const Embedding& video_vec, double w);

/// End-to-end semantic-consistency reward for one reasoning trace: extract the
/// description span, embed it, compare with the averaged frame embedding.
/// An empty span scores 0 without calling the provider.
double score_semantic(std::string_view think, std::span<const std::string> frames,
                      const EmbeddingProvider& provider, const SemanticConfig& cfg);

}  // namespace rftreward::semantic

#endif  // RFTREWARD_SEMANTIC_HPP_
