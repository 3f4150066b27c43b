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

#include <fstream>
#include <sstream>

#include "corpus.hpp"
#include "rftreward/config.hpp"
#include "rftreward/errors.hpp"
#include "rftreward/records.hpp"

using namespace rftreward;
using namespace rftreward::records;

TEST_CASE("sample records round trip and keep unknown fields") {
  const std::string line =
      R"({"id":"s1","media":{"kind":"video","frames":["a","b"]},"question":"Q?",)"
      R"("answer_type":"mc","ground_truth":"B","options":["x","y"],"split":"train","meta":{"k":1}})";
  const auto rec = parse_sample(line, 1);
  CHECK(rec.sample.id == "s1");
  CHECK(rec.sample.media.frames.size() == 2);
  CHECK(rec.sample.answer_type == AnswerType::kMultipleChoice);
  CHECK(rec.extra["split"] == "train");
  CHECK(serialize_sample(rec) == line);

  const std::string image =
      R"({"id":"s2","media":{"kind":"image","path":"img.png"},"question":"Q?",)"
      R"("answer_type":"num","ground_truth":"4"})";
  CHECK(serialize_sample(parse_sample(image, 1)) == image);
  CHECK(parse_sample(image, 1).sample.media.frame_refs() == std::vector<std::string>{"img.png"});
}

TEST_CASE("sample schema errors carry the line number") {
  std::istringstream in(
      "{\"id\":\"s1\",\"media\":{\"kind\":\"video\",\"frames\":[\"a\"]},\"question\":\"q\","
      "\"answer_type\":\"num\",\"ground_truth\":\"1\"}\n\n"
      "{\"id\":\"s2\",\"media\":{\"kind\":\"video\",\"frames\":[\"a\"]},\"question\":\"q\","
      "\"answer_type\":\"num\"}\n");
  try {
    (void)read_samples(in);
    FAIL("expected SchemaError");
  } catch (const SchemaError& e) {
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).find("ground_truth") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_sample("[1]", 1), SchemaError);
  CHECK_THROWS_AS(parse_sample("{", 1), SchemaError);
  CHECK_THROWS_AS(
      parse_sample(R"({"id":"x","media":{"kind":"audio"},"question":"q","answer_type":"num","ground_truth":"1"})", 1),
      SchemaError);
  CHECK_THROWS_AS(
      parse_sample(R"({"id":"x","media":{"kind":"video","frames":["f"]},"question":"q","answer_type":"mc","ground_truth":"Z","options":["a","b"]})", 1),
      SchemaError);
}

TEST_CASE("rollout records") {
  const std::string line =
      R"({"sample_id":"s1","responses":[{"text":"<think>a</think>","logp_theta":[-0.5,-1.0],"logp_old":[-0.4,-1.1],"logp_ref":[-0.6,-0.9]}]})";
  const auto rec = parse_rollout(line, 1);
  CHECK(rec.responses[0].logp_old[1] == -1.1);
  CHECK(serialize_rollout(rec) == line);
  CHECK_THROWS_AS(
      parse_rollout(R"({"sample_id":"s1","responses":[{"text":"t","logp_theta":[-1],"logp_old":[],"logp_ref":[-1]}]})", 4),
      SchemaError);
  const auto no_logps = parse_rollout(R"({"sample_id":"s1","responses":[{"text":"t"}]})", 1);
  CHECK(no_logps.responses[0].logp_theta.empty());
}

TEST_CASE("reward reports") {
  RewardReport r{"s1", 2, rewards::total_reward(1, 0.1, 0.3)};
  const auto line = serialize_report(r);
  CHECK(line.rfind(R"({"sample_id":"s1","response_index":2,"format":1.0,"accuracy":0.1,)", 0) == 0);
  const auto back = parse_report(line, 1);
  CHECK(back.breakdown == r.breakdown);
  CHECK(back.response_index == 2);
  CHECK_THROWS_AS(parse_report(R"({"sample_id":"s1","response_index":-1})", 1), SchemaError);
}

TEST_CASE("curation records") {
  curate::CurationRecord r;
  r.sample_id = "c1";
  r.rep = curate::validate_structured_rep(corpus::two_frame_rep()).rep;
  r.cot0 = "first";
  r.final_answer = "A";
  r.kept = false;
  r.reject_reason = "incorrect final answer";
  const auto line = serialize_curation(r);
  const auto back = parse_curation(line, 1);
  CHECK(serialize_curation(back) == line);
  CHECK_FALSE(back.cot);
  CHECK_THROWS_AS(parse_curation(R"({"sample_id":"c","rep":{"frames":[]}})", 7), SchemaError);
}

TEST_CASE("config file") {
  std::istringstream in(
      "# engine defaults\n"
      "M = 32\n"
      "F=8\n"
      "w = 3   # sweep value\n"
      "\n"
      "epsilon = 0.3\n"
      "beta = 0\n"
      "tau = 0.5\n"
      "ratio_level = sequence\n");
  const auto cfg = parse_config(in);
  CHECK(cfg.semantic.span_tokens == 32);
  CHECK(cfg.semantic.frames == 8);
  CHECK(cfg.semantic.w == 3.0);
  CHECK(cfg.grpo.epsilon == 0.3);
  CHECK(cfg.grpo.beta == 0.0);
  CHECK(cfg.tau == 0.5);
  CHECK(cfg.grpo.ratio_level == grpo::RatioLevel::kSequence);

  std::istringstream empty("");
  const auto defaults = parse_config(empty);
  CHECK(defaults.semantic.w == 2.0);
  CHECK(defaults.tau == 0.7);

  for (const char* bad : {"gamma = 1\n", "M = -1\n", "w = two\n", "epsilon = 2\n", "M 4\n",
                          "M = 4\nM = 5\n", "F = 0\n"}) {
    std::istringstream b(bad);
    CHECK_THROWS_AS(parse_config(b), ConfigError);
  }
  CHECK_THROWS_AS(load_config("/nonexistent/rft.conf"), ConfigError);
}
