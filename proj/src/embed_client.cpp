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

#include "rftreward/embed_client.hpp"

#include <cstdlib>
#include <fstream>
#include <iterator>

#include <httplib.h>
#include <json.hpp>

#include "rftreward/errors.hpp"

namespace rftreward {

using nlohmann::json;

std::string resolve_embed_endpoint(const std::optional<std::string>& configured) {
  if (const char* env = std::getenv(kEmbedEndpointEnv); env && *env) return env;
  if (configured && !configured->empty()) return *configured;
  throw ConfigError(std::string("remote provider needs an endpoint (flag or ") +
                    kEmbedEndpointEnv + ")");
}

std::string frame_payload(const std::string& frame_ref) {
  static constexpr std::string_view kPrefix = "base64:";
  if (frame_ref.starts_with(kPrefix)) return frame_ref.substr(kPrefix.size());
  std::ifstream in(frame_ref, std::ios::binary);
  if (!in) throw ProviderError("cannot read frame '" + frame_ref + "'");
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return httplib::detail::base64_encode(bytes);
}

HttpEmbeddingProvider::HttpEmbeddingProvider(std::string endpoint, int timeout_seconds)
    : endpoint_(std::move(endpoint)), timeout_seconds_(timeout_seconds) {
  while (!endpoint_.empty() && endpoint_.back() == '/') endpoint_.pop_back();
  if (endpoint_.empty()) throw ConfigError("empty embedding endpoint");
}

void HttpEmbeddingProvider::note_dimension(std::size_t dim) const {
  std::lock_guard<std::mutex> lock(mu_);
  if (dimension_ && *dimension_ != dim) {
    throw ProviderError("embedding service changed dimension from " +
                        std::to_string(*dimension_) + " to " + std::to_string(dim));
  }
  dimension_ = dim;
}

std::size_t HttpEmbeddingProvider::dimension() const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (dimension_) return *dimension_;
  }
  httplib::Client cli(endpoint_);
  cli.set_read_timeout(timeout_seconds_, 0);
  const auto res = cli.Get("/healthz");
  if (!res) throw ProviderError("embedding service unreachable at " + endpoint_);
  if (res->status != 200) {
    throw ProviderError("embedding service not ready (HTTP " + std::to_string(res->status) + ")");
  }
  const auto body = json::parse(res->body, nullptr, false);
  if (body.is_discarded() || !body.contains("dim") || !body["dim"].is_number_unsigned()) {
    throw ProviderError("malformed /healthz response");
  }
  note_dimension(body["dim"].get<std::size_t>());
  return body["dim"].get<std::size_t>();
}

std::vector<Embedding> HttpEmbeddingProvider::embed(const char* kind,
                                                    std::span<const std::string> inputs) const {
  std::vector<Embedding> out;
  out.reserve(inputs.size());
  httplib::Client cli(endpoint_);
  cli.set_read_timeout(timeout_seconds_, 0);
  for (std::size_t start = 0; start < inputs.size(); start += kMaxEmbedBatch) {
    const auto chunk = inputs.subspan(start, std::min(kMaxEmbedBatch, inputs.size() - start));
    json request = {{"kind", kind}, {"inputs", json::array()}};
    for (const auto& s : chunk) {
      request["inputs"].push_back(std::string_view(kind) == "image" ? frame_payload(s) : s);
    }
    const auto res = cli.Post("/v1/embed", request.dump(), "application/json");
    if (!res) throw ProviderError("embedding service unreachable at " + endpoint_);
    if (res->status != 200) {
      throw ProviderError("embedding service returned HTTP " + std::to_string(res->status) +
                          ": " + res->body);
    }
    const auto body = json::parse(res->body, nullptr, false);
    if (body.is_discarded() || !body.contains("dim") || !body.contains("vectors") ||
        !body["vectors"].is_array()) {
      throw ProviderError("malformed /v1/embed response");
    }
    if (body["vectors"].size() != chunk.size()) {
      throw ProviderError("embedding service returned " + std::to_string(body["vectors"].size()) +
                          " vectors for " + std::to_string(chunk.size()) + " inputs");
    }
    try {
      const auto dim = body["dim"].get<std::size_t>();
      note_dimension(dim);
      for (const auto& row : body["vectors"]) {
        auto v = row.get<Embedding>();
        check_embedding(v, dim);
        out.push_back(std::move(v));
      }
    } catch (const json::exception& e) {
      throw ProviderError(std::string("malformed /v1/embed response: ") + e.what());
    }
  }
  return out;
}

std::vector<Embedding> HttpEmbeddingProvider::embed_text(
    std::span<const std::string> inputs) const {
  return embed("text", inputs);
}

std::vector<Embedding> HttpEmbeddingProvider::embed_images(
    std::span<const std::string> frames) const {
  return embed("image", frames);
}

}  // namespace rftreward
