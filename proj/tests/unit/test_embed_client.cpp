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

#include <doctest.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "rftreward/embed_client.hpp"
#include "rftreward/errors.hpp"
#include "rftreward/rewards.hpp"

using namespace rftreward;
using nlohmann::json;

namespace {

// In-process stand-in for the embedding sidecar. Vectors come from a seeded
// stub so they are unit-norm and deterministic; `mode` injects faults.
class FakeSidecar {
 public:
  enum class Mode { kOk, kNotUnit, kShort, kWarmup, kWrongDim };

  FakeSidecar() {
    server_.Get("/healthz", [this](const httplib::Request&, httplib::Response& res) {
      if (mode == Mode::kWarmup) {
        res.status = 503;
        return;
      }
      res.set_content(json{{"status", "ok"}, {"dim", 64}}.dump(), "application/json");
    });
    server_.Post("/v1/embed", [this](const httplib::Request& req, httplib::Response& res) {
      const auto body = json::parse(req.body, nullptr, false);
      if (body.is_discarded() || !body.contains("inputs") || body["inputs"].empty()) {
        res.status = 400;
        return;
      }
      if (body["inputs"].size() > kMaxEmbedBatch) {
        res.status = 413;
        return;
      }
      ++requests;
      max_batch = std::max<std::size_t>(max_batch, body["inputs"].size());
      last_inputs = body["inputs"];
      json vectors = json::array();
      for (const auto& in : body["inputs"]) {
        auto v = stub_.embed_one(in.get<std::string>());
        if (mode == Mode::kNotUnit) v[0] += 0.5;
        vectors.push_back(v);
      }
      if (mode == Mode::kShort) vectors.erase(vectors.begin());
      const int dim = mode == Mode::kWrongDim ? 32 : 64;
      res.set_content(json{{"dim", dim}, {"vectors", vectors}}.dump(), "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }

  ~FakeSidecar() {
    server_.stop();
    thread_.join();
  }

  std::string url() const { return "http://127.0.0.1:" + std::to_string(port_); }

  std::atomic<Mode> mode{Mode::kOk};
  std::atomic<int> requests{0};
  std::size_t max_batch = 0;
  json last_inputs;

 private:
  StubEmbeddingProvider stub_{5};
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

Sample mc(std::string id, std::vector<std::string> frames, std::string gt) {
  Sample s;
  s.id = std::move(id);
  s.media.frames = std::move(frames);
  s.answer_type = AnswerType::kMultipleChoice;
  s.ground_truth = std::move(gt);
  s.options = {"a", "b", "c"};
  return s;
}

}  // namespace

TEST_CASE("remote provider returns aligned unit vectors") {
  FakeSidecar sidecar;
  HttpEmbeddingProvider remote(sidecar.url());
  CHECK(remote.dimension() == 64);
  const std::vector<std::string> texts = {"same text", "other", "same text"};
  const auto v = remote.embed_text(texts);
  REQUIRE(v.size() == 3);
  CHECK(v[0] == v[2]);
  for (const auto& x : v) CHECK(std::abs(l2_norm(x) - 1.0) <= 1e-6);
}

TEST_CASE("remote provider splits large requests") {
  FakeSidecar sidecar;
  HttpEmbeddingProvider remote(sidecar.url());
  std::vector<std::string> texts;
  for (int i = 0; i < 600; ++i) texts.push_back("input " + std::to_string(i));
  const auto v = remote.embed_text(texts);
  CHECK(v.size() == 600);
  CHECK(sidecar.requests == 3);
  CHECK(sidecar.max_batch == 256);
  StubEmbeddingProvider same(5);
  CHECK(v[599] == same.embed_one("input 599"));
}

TEST_CASE("remote provider image payloads") {
  FakeSidecar sidecar;
  HttpEmbeddingProvider remote(sidecar.url());
  const auto path = std::filesystem::temp_directory_path() / "rft_frame.bin";
  {
    std::ofstream out(path, std::ios::binary);
    out << "hello";
  }
  const std::vector<std::string> frames = {"base64:AAEC", path.string()};
  (void)remote.embed_images(frames);
  CHECK(sidecar.last_inputs == json::array({"AAEC", "aGVsbG8="}));
  std::filesystem::remove(path);
  const std::vector<std::string> missing = {"/nonexistent/frame.png"};
  CHECK_THROWS_AS(remote.embed_images(missing), ProviderError);
}

TEST_CASE("remote provider contract violations") {
  FakeSidecar sidecar;
  const std::vector<std::string> texts = {"a", "b"};
  SUBCASE("non-unit vectors") {
    sidecar.mode = FakeSidecar::Mode::kNotUnit;
    CHECK_THROWS_AS(HttpEmbeddingProvider(sidecar.url()).embed_text(texts), ProviderError);
  }
  SUBCASE("count mismatch") {
    sidecar.mode = FakeSidecar::Mode::kShort;
    CHECK_THROWS_AS(HttpEmbeddingProvider(sidecar.url()).embed_text(texts), ProviderError);
  }
  SUBCASE("dimension mismatch") {
    sidecar.mode = FakeSidecar::Mode::kWrongDim;
    CHECK_THROWS_AS(HttpEmbeddingProvider(sidecar.url()).embed_text(texts), ProviderError);
  }
  SUBCASE("warm-up") {
    sidecar.mode = FakeSidecar::Mode::kWarmup;
    CHECK_THROWS_AS(HttpEmbeddingProvider(sidecar.url()).dimension(), ProviderError);
  }
  SUBCASE("unreachable") {
    HttpEmbeddingProvider remote("http://127.0.0.1:1", 1);
    CHECK_THROWS_AS(remote.embed_text(texts), ProviderError);
  }
}

TEST_CASE("remote provider passes the scoring contracts") {
  FakeSidecar sidecar;
  HttpEmbeddingProvider remote(sidecar.url());
  StubEmbeddingProvider stub;
  std::vector<Sample> samples;
  for (int i = 0; i < 4; ++i) {
    samples.push_back(mc("r" + std::to_string(i),
                         {"base64:ZnJhbWUw" + std::to_string(i), "base64:ZnJhbWUx"},
                         std::string(1, "ABC"[i % 3])));
  }
  std::vector<std::string> responses;
  for (int i = 0; i < 4; ++i) {
    for (const char* a : {"A", "B", "C"}) {
      responses.push_back(std::string("<think>Look. frame ") + std::to_string(i) +
                          " content</think><answer>" + a + "</answer>");
    }
  }
  std::vector<rewards::ScoringJob> jobs;
  for (std::size_t j = 0; j < responses.size(); ++j) jobs.push_back({&samples[j / 3], responses[j]});

  const auto got = rewards::score_batch(jobs, remote, {}, {2, 4});
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    const auto& r = got[j];
    CHECK(r == rewards::score_response(*jobs[j].sample, jobs[j].response, remote, {}));
    CHECK(r.total >= 0.0);
    CHECK(r.total <= 3.0);
    CHECK(r.gate_open == (r.accuracy > 0.0));
    CHECK(r.semantic >= 0.0);
    CHECK(r.semantic <= 1.0);
    if (!r.gate_open) {
      CHECK(r.total == rewards::score_response(*jobs[j].sample, jobs[j].response, stub, {}).total);
    }
  }

  sidecar.mode = FakeSidecar::Mode::kNotUnit;
  try {
    (void)rewards::score_response(samples[0], responses[0], remote, {});
    FAIL("expected ScoringError");
  } catch (const ScoringError& e) {
    CHECK(e.sample_id() == "r0");
  }
}

TEST_CASE("endpoint resolution") {
  ::unsetenv(kEmbedEndpointEnv);
  CHECK_THROWS_AS(resolve_embed_endpoint(std::nullopt), ConfigError);
  CHECK(resolve_embed_endpoint("http://flag:1") == "http://flag:1");
  ::setenv(kEmbedEndpointEnv, "http://env:2", 1);
  CHECK(resolve_embed_endpoint("http://flag:1") == "http://env:2");
  ::unsetenv(kEmbedEndpointEnv);
}
