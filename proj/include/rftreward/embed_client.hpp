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

#ifndef RFTREWARD_EMBED_CLIENT_HPP_
#define RFTREWARD_EMBED_CLIENT_HPP_

#include <mutex>
#include <optional>
#include <string>

#include "rftreward/embedding.hpp"

namespace rftreward {

inline constexpr const char* kEmbedEndpointEnv = "REWARD_EMBED_ENDPOINT";
inline constexpr std::size_t kMaxEmbedBatch = 256;

// REWARD_EMBED_ENDPOINT when set and non-empty, otherwise `configured`.
// Throws ConfigError when neither is available.
std::string resolve_embed_endpoint(const std::optional<std::string>& configured);

// Wire payload for one frame reference: the text after a "base64:" prefix,
// or the base64 encoding of the referenced file.
std::string frame_payload(const std::string& frame_ref);

/// Client for the embedding sidecar.
///
///   POST /v1/embed  {"kind": "text"|"image", "inputs": [...]}
///                -> {"dim": D, "vectors": [[...], ...]}
///   GET  /healthz -> {"status": "ok", "dim": D}
///
/// Requests are split into batches of at most 256 inputs. Every returned
/// vector is checked for count, dimension and unit norm.
class HttpEmbeddingProvider final : public EmbeddingProvider {
 public:
  explicit HttpEmbeddingProvider(std::string endpoint, int timeout_seconds = 60);

  std::size_t dimension() const override;
  std::vector<Embedding> embed_text(std::span<const std::string> inputs) const override;
  std::vector<Embedding> embed_images(std::span<const std::string> frames) const override;

  const std::string& endpoint() const { return endpoint_; }

 private:
  std::vector<Embedding> embed(const char* kind, std::span<const std::string> inputs) const;
  void note_dimension(std::size_t dim) const;

  std::string endpoint_;
  int timeout_seconds_;
  mutable std::mutex mu_;
  mutable std::optional<std::size_t> dimension_;
};

}  // namespace rftreward

#endif  // RFTREWARD_EMBED_CLIENT_HPP_
