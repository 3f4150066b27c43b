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

#include "rftreward/semantic.hpp"

#include <algorithm>
#include <cmath>

#include "rftreward/errors.hpp"

namespace rftreward::semantic {

void SemanticConfig::validate() const {
  if (!(w > 0.0) || !std::isfinite(w)) throw ConfigError("w must be a positive number");
  if (span_tokens == 0) throw ConfigError("M (span tokens) must be >= 1");
  if (frames == 0) throw ConfigError("F (frames) must be >= 1");
}

std::vector<std::string> uniform_frame_sample(std::span<const std::string> frames,
                                              std::size_t count) {
  if (frames.size() <= count) return {frames.begin(), frames.end()};
  std::vector<std::string> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(frames[(2 * i + 1) * frames.size() / (2 * count)]);
  }
  return out;
}

Embedding mean_direction(std::span<const Embedding> vectors) {
  if (vectors.empty()) throw ContractViolation("video embedding needs at least one frame");
  std::vector<const Embedding*> order;
  order.reserve(vectors.size());
  for (const auto& v : vectors) order.push_back(&v);
  std::sort(order.begin(), order.end(),
            [](const Embedding* a, const Embedding* b) { return *a < *b; });

  Embedding mean(vectors.front().size(), 0.0);
  for (const auto* v : order) {
    if (v->size() != mean.size()) throw ProviderError("frame embeddings differ in dimension");
    for (std::size_t i = 0; i < mean.size(); ++i) mean[i] += (*v)[i];
  }
  const double n = l2_norm(mean);
  if (!(n > 1e-12 * static_cast<double>(vectors.size()))) {
    throw ProviderError("degenerate video embedding");
  }
  for (double& x : mean) x /= n;
  return mean;
}

Embedding video_embedding(std::span<const std::string> frames,
                          const EmbeddingProvider& provider) {
  if (frames.empty()) throw ContractViolation("video embedding needs at least one frame");
  const auto vectors = provider.embed_images(frames);
  if (vectors.size() != frames.size()) {
    throw ProviderError("provider returned " + std::to_string(vectors.size()) +
                        " image embeddings for " + std::to_string(frames.size()) + " frames");
  }
  for (const auto& v : vectors) check_embedding(v, provider.dimension());
  return mean_direction(vectors);
}

double reward_from_cosine(double cos, double w) {
  if (!(w > 0.0)) throw ContractViolation("w must be positive");
  return std::min(1.0, w * std::max(cos, 0.0));
}

double semantic_reward(const Embedding& text_vec, const Embedding& video_vec, double w) {
  return reward_from_cosine(cosine(text_vec, video_vec), w);
}

double score_semantic(std::string_view think, std::span<const std::string> frames,
                      const EmbeddingProvider& provider, const SemanticConfig& cfg) {
  const auto span = trace::extract_description_span(think, cfg.span_tokens);
  if (span.tokens.empty()) return 0.0;
  const std::string span_text = span.text();
  const auto text_vecs = provider.embed_text(std::span<const std::string>(&span_text, 1));
  if (text_vecs.size() != 1) throw ProviderError("provider returned no text embedding");
  check_embedding(text_vecs.front(), provider.dimension());
  const auto sampled = uniform_frame_sample(frames, cfg.frames);
  return semantic_reward(text_vecs.front(), video_embedding(sampled, provider), cfg.w);
}

}  // namespace rftreward::semantic
