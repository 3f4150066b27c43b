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

#include "rftreward/embedding.hpp"

#include <cmath>

#include "rftreward/errors.hpp"
#include "rftreward/text.hpp"

namespace rftreward {

double dot(const Embedding& a, const Embedding& b) {
  if (a.size() != b.size()) throw ContractViolation("embedding dimensions differ");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double l2_norm(const Embedding& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double cosine(const Embedding& a, const Embedding& b) {
  const double na = l2_norm(a);
  const double nb = l2_norm(b);
  if (na == 0.0 || nb == 0.0) throw ContractViolation("cosine of a zero vector");
  const double c = dot(a, b) / (na * nb);
  return c > 1.0 ? 1.0 : (c < -1.0 ? -1.0 : c);
}

void check_embedding(const Embedding& v, std::size_t dimension) {
  if (v.size() != dimension) {
    throw ProviderError("embedding has dimension " + std::to_string(v.size()) + ", expected " +
                        std::to_string(dimension));
  }
  const double n = l2_norm(v);
  if (!std::isfinite(n) || std::abs(n - 1.0) > kUnitNormTolerance) {
    throw ProviderError("embedding is not unit-norm (|v| = " + std::to_string(n) + ")");
  }
}

StubEmbeddingProvider::StubEmbeddingProvider(std::uint64_t seed, std::size_t dimension)
    : basis_(text::fnv1a64(std::to_string(seed))), dimension_(dimension) {
  if (dimension == 0) throw ContractViolation("embedding dimension must be >= 1");
}

void StubEmbeddingProvider::set_caption(std::string frame_ref, std::string caption) {
  captions_.insert_or_assign(std::move(frame_ref), std::move(caption));
}

Embedding StubEmbeddingProvider::embed_one(std::string_view s) const {
  Embedding v(dimension_, 0.0);
  auto add_gram = [&](std::string_view gram) {
    const std::uint64_t h = text::fnv1a64(gram, basis_);
    v[(h >> 1) % dimension_] += (h & 1U) ? -1.0 : 1.0;
  };
  if (s.size() < 3) {
    add_gram(s);
  } else {
    for (std::size_t i = 0; i + 3 <= s.size(); ++i) add_gram(s.substr(i, 3));
  }
  const double n = l2_norm(v);
  if (n == 0.0) {
    // Every gram cancelled out; fall back to the first axis.
    v[0] = 1.0;
    return v;
  }
  for (double& x : v) x /= n;
  return v;
}

std::vector<Embedding> StubEmbeddingProvider::embed_text(
    std::span<const std::string> inputs) const {
  std::vector<Embedding> out;
  out.reserve(inputs.size());
  for (const auto& s : inputs) out.push_back(embed_one(s));
  return out;
}

std::vector<Embedding> StubEmbeddingProvider::embed_images(
    std::span<const std::string> frames) const {
  std::vector<Embedding> out;
  out.reserve(frames.size());
  for (const auto& f : frames) {
    const auto it = captions_.find(f);
    out.push_back(embed_one(it == captions_.end() ? std::string_view(f) : it->second));
  }
  return out;
}

}  // namespace rftreward
