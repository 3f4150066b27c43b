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

#include "rftreward/rewards.hpp"

#include <cmath>
#include <map>
#include <optional>

#include "parallel.hpp"
#include "rftreward/errors.hpp"
#include "rftreward/graders.hpp"

namespace rftreward::rewards {
namespace {

bool in_unit_interval(double v) { return std::isfinite(v) && v >= 0.0 && v <= 1.0; }

struct Graded {
  double format = 0.0;
  double accuracy = 0.0;
  std::optional<std::string> think;
};

Graded grade_response(const Sample& sample, std::string_view response) {
  const auto parsed = trace::parse_trace(response);
  Graded g;
  g.format = format_reward(parsed);
  g.accuracy = parsed.answer ? graders::grade(sample, *parsed.answer) : 0.0;
  g.think = parsed.think;
  return g;
}

}  // namespace

double format_reward(const trace::ParsedTrace& parsed) { return parsed.format_ok ? 1.0 : 0.0; }

RewardBreakdown total_reward(double rf, double ra, double rs) {
  if (rf != 0.0 && rf != 1.0) throw ContractViolation("format reward must be 0 or 1");
  if (!in_unit_interval(ra)) throw ContractViolation("accuracy reward must lie in [0, 1]");
  if (!in_unit_interval(rs)) throw ContractViolation("semantic reward must lie in [0, 1]");
  RewardBreakdown r;
  r.format = rf;
  r.accuracy = ra;
  r.gate_open = ra > 0.0;
  r.semantic = r.gate_open ? rs : 0.0;
  r.total = rf + ra + r.semantic;
  return r;
}

RewardBreakdown score_response(const Sample& sample, std::string_view response,
                               const EmbeddingProvider& provider,
                               const semantic::SemanticConfig& cfg) {
  const Graded g = grade_response(sample, response);
  double rs = 0.0;
  if (g.accuracy > 0.0 && g.think) {
    try {
      rs = semantic::score_semantic(*g.think, sample.media.frame_refs(), provider, cfg);
    } catch (const ProviderError& e) {
      throw ScoringError(sample.id, e.what());
    }
  }
  return total_reward(g.format, g.accuracy, rs);
}

std::vector<RewardBreakdown> score_batch(std::span<const ScoringJob> jobs,
                                         const EmbeddingProvider& provider,
                                         const semantic::SemanticConfig& cfg,
                                         const BatchOptions& options) {
  const std::size_t n = jobs.size();
  const std::size_t threads = options.threads;
  std::vector<Graded> graded(n);
  detail::parallel_for(n, threads, [&](std::size_t i) {
    if (!jobs[i].sample) throw ContractViolation("scoring job without a sample");
    graded[i] = grade_response(*jobs[i].sample, jobs[i].response);
  });

  // Gate-open responses with a non-empty description span need R_s.
  std::vector<std::size_t> pending;
  std::vector<std::string> spans;
  std::map<const Sample*, std::size_t> video_slot;
  std::vector<const Sample*> video_samples;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(graded[i].accuracy > 0.0) || !graded[i].think) continue;
    auto span = trace::extract_description_span(*graded[i].think, cfg.span_tokens);
    if (span.tokens.empty()) continue;
    pending.push_back(i);
    spans.push_back(span.text());
    if (video_slot.emplace(jobs[i].sample, video_samples.size()).second) {
      video_samples.push_back(jobs[i].sample);
    }
  }

  const std::size_t batch = std::max<std::size_t>(1, options.text_batch);
  const std::size_t text_calls = (spans.size() + batch - 1) / batch;
  std::vector<Embedding> text_vecs(spans.size());
  detail::parallel_for(text_calls, threads, [&](std::size_t c) {
    const std::size_t lo = c * batch;
    const std::size_t len = std::min(batch, spans.size() - lo);
    std::vector<Embedding> got;
    try {
      got = provider.embed_text(std::span<const std::string>(spans).subspan(lo, len));
      if (got.size() != len) throw ProviderError("provider returned a short text batch");
      for (const auto& v : got) check_embedding(v, provider.dimension());
    } catch (const ProviderError& e) {
      throw ScoringError(jobs[pending[lo]].sample->id, e.what());
    }
    for (std::size_t k = 0; k < len; ++k) text_vecs[lo + k] = std::move(got[k]);
  });

  std::vector<Embedding> video_vecs(video_samples.size());
  detail::parallel_for(video_samples.size(), threads, [&](std::size_t v) {
    const Sample& s = *video_samples[v];
    try {
      const auto sampled = semantic::uniform_frame_sample(s.media.frame_refs(), cfg.frames);
      video_vecs[v] = semantic::video_embedding(sampled, provider);
    } catch (const ProviderError& e) {
      throw ScoringError(s.id, e.what());
    }
  });

  std::vector<double> rs(n, 0.0);
  for (std::size_t k = 0; k < pending.size(); ++k) {
    const std::size_t i = pending[k];
    rs[i] = semantic::semantic_reward(text_vecs[k], video_vecs[video_slot.at(jobs[i].sample)],
                                      cfg.w);
  }

  std::vector<RewardBreakdown> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = total_reward(graded[i].format, graded[i].accuracy, rs[i]);
  }
  return out;
}

}  // namespace rftreward::rewards
