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

#include <string>
#include <utility>

#include "rftreward/curate.hpp"
#include "rftreward/errors.hpp"
#include "rftreward/prompts.hpp"
#include "rftreward/text.hpp"
#include "rftreward/trace.hpp"

namespace rftreward::curate {
namespace {

using Substitutions = std::vector<std::pair<std::string_view, std::string_view>>;

// Single left-to-right pass, so injected values are never rescanned.
std::string fill(std::string_view tmpl, const Substitutions& subs) {
  std::string out;
  out.reserve(tmpl.size() + 256);
  std::size_t i = 0;
  while (i < tmpl.size()) {
    bool replaced = false;
    for (const auto& [marker, value] : subs) {
      if (tmpl.substr(i, marker.size()) == marker) {
        out += value;
        i += marker.size();
        replaced = true;
        break;
      }
    }
    if (!replaced) out += tmpl[i++];
  }
  return out;
}

}  // namespace

std::string ChatRequest::digest() const {
  std::string material = system;
  material += '\x1f';
  material += user;
  material += '\x1f';
  material += text::join(attachments, "\x1e");
  return text::hex_digest(material);
}

std::string_view answer_format_template(AnswerType type) {
  switch (type) {
    case AnswerType::kMultipleChoice: return prompts::asset("answer_format_mc");
    case AnswerType::kNumerical: return prompts::asset("answer_format_num");
    case AnswerType::kFreeForm: return prompts::asset("answer_format_free");
    case AnswerType::kOcr: return prompts::asset("answer_format_ocr");
    case AnswerType::kRegression: return prompts::asset("answer_format_reg");
  }
  throw ConfigError("unknown answer type");
}

const std::vector<std::string>& cog_stage_titles() {
  static const std::vector<std::string> kTitles = {
      "Simulate Browsing the Video", "Understand the Question", "Localize Relevant Moments",
      "Visual Reasoning", "Answer Thoughtfully"};
  return kTitles;
}

std::string format_question(const Sample& sample) {
  std::string q = sample.question;
  if (!sample.options.empty()) {
    q += "\nOptions:";
    for (std::size_t i = 0; i < sample.options.size(); ++i) {
      q += "\n";
      q += static_cast<char>('A' + i);
      q += ". " + sample.options[i];
    }
  }
  return q;
}

ChatRequest build_rep_prompt(const Sample& sample) {
  ChatRequest r;
  if (sample.media.kind == MediaKind::kVideo) {
    r.system = std::string(prompts::asset("rep_system"));
    r.user = std::string(prompts::asset("rep_user"));
  } else {
    r.system = std::string(prompts::asset("image_rep_system"));
    r.user = std::string(prompts::asset("image_rep_general"));
  }
  r.attachments = sample.media.frame_refs();
  return r;
}

ChatRequest build_cog_prompt(std::string_view question, const StructuredVideoRep& rep,
                             AnswerType type) {
  const std::string metadata = rep.frames_json().dump(2);
  ChatRequest r;
  r.system = std::string(prompts::asset("cog_system"));
  r.user = fill(prompts::asset("cog_user"),
                {{"<Overall Video Caption>", rep.video_caption},
                 {"<Per-Frame Metadata>", metadata},
                 {"<Question>", question},
                 {"<Corresponding Answer Format Template>", answer_format_template(type)}});
  return r;
}

ChatRequest build_image_cog_prompt(std::string_view question, std::string_view image_caption,
                                   const nlohmann::json& image_metadata, AnswerType type) {
  const std::string metadata = image_metadata.dump(2);
  ChatRequest r;
  r.system = std::string(prompts::asset("image_cog_system"));
  r.user = fill(prompts::asset("image_cog_user"),
                {{"<Overall Image Caption>", image_caption},
                 {"<Image Metadata>", metadata},
                 {"<Question>", question},
                 {"<Corresponding Answer Format Template>", answer_format_template(type)}});
  return r;
}

ChatRequest build_cross_prompt(std::string_view question, std::string_view cot0,
                               std::span<const std::string> media, MediaKind kind) {
  const bool video = kind == MediaKind::kVideo;
  ChatRequest r;
  r.system = std::string(prompts::asset(video ? "cross_system" : "image_cross_system"));
  r.user = fill(prompts::asset(video ? "cross_user" : "image_cross_user"),
                {{"<Question>", question}, {"<Original CoT>", cot0}});
  r.attachments.assign(media.begin(), media.end());
  return r;
}

CogReply split_cog_reply(std::string_view reply) {
  const auto parsed = trace::parse_trace(reply);
  CogReply out;
  if (parsed.answer) out.final_answer = std::string(text::trim(*parsed.answer));
  if (parsed.think) {
    out.cot = std::string(text::trim(*parsed.think));
    return out;
  }
  // No think block: the reasoning is whatever precedes the answer block.
  std::string_view body = reply;
  if (const auto pos = body.find("<answer>"); pos != std::string_view::npos) {
    body = body.substr(0, pos);
  }
  out.cot = std::string(text::trim(body));
  return out;
}

std::string extract_refined_cot(std::string_view reply) {
  const std::string_view body = text::trim(reply);
  constexpr std::string_view kOpen = "<think>";
  constexpr std::string_view kClose = "</think>";
  if (!body.starts_with(kOpen) || !body.ends_with(kClose) ||
      body.size() < kOpen.size() + kClose.size()) {
    throw ClientError("refinement format violation");
  }
  const std::string_view inner = body.substr(kOpen.size(), body.size() - kOpen.size() - kClose.size());
  if (inner.find(kOpen) != std::string_view::npos || inner.find(kClose) != std::string_view::npos) {
    throw ClientError("refinement format violation");
  }
  return std::string(inner);
}

std::string refine_cot(std::span<const std::string> media, MediaKind kind,
                       std::string_view question, std::string_view cot0,
                       const ChatClient& client) {
  if (text::is_blank(cot0)) throw ContractViolation("refine_cot needs a non-empty CoT");
  return extract_refined_cot(client.complete(build_cross_prompt(question, cot0, media, kind)));
}

}  // namespace rftreward::curate
