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

#ifndef RFTREWARD_EMBEDDING_HPP_
#define RFTREWARD_EMBEDDING_HPP_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace rftreward {

using Embedding = std::vector<double>;

inline constexpr double kUnitNormTolerance = 1e-6;

double dot(const Embedding& a, const Embedding& b);
double l2_norm(const Embedding& v);
double cosine(const Embedding& a, const Embedding& b);

// Throws ProviderError unless |v| = 1 within kUnitNormTolerance and v has
// the expected dimension.
void check_embedding(const Embedding& v, std::size_t dimension);

/// Source of unit-norm text and image embeddings sharing one space.
///
/// Implementations are deterministic (identical inputs yield identical
/// vectors) and safe to call from several threads at once. Outputs are
/// aligned with inputs.
class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;

  virtual std::size_t dimension() const = 0;
  virtual std::vector<Embedding> embed_text(std::span<const std::string> inputs) const = 0;
  // Frame references are file paths or "base64:"-prefixed encoded images.
  virtual std::vector<Embedding> embed_images(std::span<const std::string> frames) const = 0;
};

/// Deterministic, model-free provider for tests and offline runs.
///
/// Text is embedded by hashing its byte 3-grams into `dimension` buckets with
/// a sign taken from the hash parity, then L2-normalizing. A frame is embedded
/// as the text of the caption registered for it, or of its reference string
/// when none is registered. Different seeds give unrelated embedding spaces.
class StubEmbeddingProvider final : public EmbeddingProvider {
 public:
  static constexpr std::size_t kDefaultDimension = 64;

  explicit StubEmbeddingProvider(std::uint64_t seed = 0,
                                 std::size_t dimension = kDefaultDimension);

  // Makes frame `frame_ref` embed exactly like `caption`.
  void set_caption(std::string frame_ref, std::string caption);

  std::size_t dimension() const override { return dimension_; }
  std::vector<Embedding> embed_text(std::span<const std::string> inputs) const override;
  std::vector<Embedding> embed_images(std::span<const std::string> frames) const override;

  Embedding embed_one(std::string_view text) const;

 private:
  std::uint64_t basis_;
  std::size_t dimension_;
  std::map<std::string, std::string, std::less<>> captions_;
};

}  // namespace rftreward

#endif  // RFTREWARD_EMBEDDING_HPP_
