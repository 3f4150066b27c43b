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

#ifndef RFTREWARD_CURATE_HPP_
#define RFTREWARD_CURATE_HPP_

#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "rftreward/embedding.hpp"
#include "rftreward/sample.hpp"

namespace rftreward::curate {

// ---------------------------------------------------------------------------
// Structured video representation

struct HumanAttributes {
  std::string gender;
  std::string clothing;
  std::string posture;
};

struct KeyElements {
  std::vector<std::string> objects;
  std::vector<std::string> actions;
  std::string scene;
  std::vector<std::string> notable_features;
  std::vector<std::string> spatial_relations;
  std::optional<HumanAttributes> human_attributes;
  std::vector<std::string> potential_interactions;
};

struct FrameMetadata {
  std::string timestamp;  // HH:MM:SS
  std::string caption;
  KeyElements key_elements;
};

struct StructuredVideoRep {
  std::string video_caption;
  std::vector<FrameMetadata> frames;

  nlohmann::ordered_json frames_json() const;
  nlohmann::ordered_json to_json() const;
};

struct Violation {
  std::string path;  // JSON-pointer-like location, e.g. "/frames/1/timestamp"
  std::string kind;  // "missing field", "wrong type", "timestamp format",
                     // "non-monotonic timestamps", "empty frames"
};

struct RepValidation {
  std::optional<StructuredVideoRep> rep;  // set iff violations is empty
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
};

// Seconds since 00:00:00 for a strict "HH:MM:SS" string.
std::optional<long> parse_timestamp(std::string_view s);

/// Checks a representation document against the frame schema and reports
/// every violation found, not just the first.
RepValidation validate_structured_rep(const nlohmann::json& document);

// ---------------------------------------------------------------------------
// Prompt assembly

struct ChatRequest {
  std::string system;
  std::string user;
  std::vector<std::string> attachments;  // frame/image references

  // Stable hex digest of all three fields.
  std::string digest() const;
};

std::string_view answer_format_template(AnswerType type);

// Titles of the five reasoning stages of the CoT generation system prompt,
// in order: simulated observation, task understanding, selective focus,
// visual reasoning, reflective answering.
const std::vector<std::string>& cog_stage_titles();

// Question text as shown to the model; mc options are listed as "A. ...".
std::string format_question(const Sample& sample);

ChatRequest build_rep_prompt(const Sample& sample);
ChatRequest build_cog_prompt(std::string_view question, const StructuredVideoRep& rep,
                             AnswerType type);
ChatRequest build_image_cog_prompt(std::string_view question, std::string_view image_caption,
                                   const nlohmann::json& image_metadata, AnswerType type);
ChatRequest build_cross_prompt(std::string_view question, std::string_view cot0,
                               std::span<const std::string> media, MediaKind kind);

// ---------------------------------------------------------------------------
// Chat clients

class ChatClient {
 public:
  virtual ~ChatClient() = default;
  virtual std::string complete(const ChatRequest& request) const = 0;
};

/// Replays recorded replies keyed by request digest. Requests without a
/// recording go to the fallback handler, if any; otherwise ClientError.
class MockChatClient final : public ChatClient {
 public:
  using Handler = std::function<std::optional<std::string>(const ChatRequest&)>;

  void record(std::string digest, std::string reply);
  // JSONL lines of {"digest": ..., "reply": ...}.
  void load_fixtures(std::istream& in);
  void set_fallback(Handler handler) { fallback_ = std::move(handler); }

  std::string complete(const ChatRequest& request) const override;

  // Replies to a cross-modal refinement request with its original CoT,
  // wrapped in think tags.
  static Handler echo_refinement();

 private:
  std::map<std::string, std::string, std::less<>> replies_;
  Handler fallback_;
};

/// OpenAI-compatible /v1/chat/completions client. Attachments are sent as
/// image_url parts holding base64 data URLs.
class HttpChatClient final : public ChatClient {
 public:
  HttpChatClient(std::string endpoint, std::string model, int timeout_seconds = 300);
  std::string complete(const ChatRequest& request) const override;

 private:
  std::string endpoint_;
  std::string model_;
  int timeout_seconds_;
};

// ---------------------------------------------------------------------------
// Pipeline stages

struct CogReply {
  std::string cot;
  std::optional<std::string> final_answer;
};

// Splits a CoT-generation reply into reasoning and the <answer> content.
CogReply split_cog_reply(std::string_view reply);

// Body of the single <think>...</think> block that must make up the whole
// reply (surrounding whitespace allowed). Throws ClientError
// "refinement format violation" otherwise.
std::string extract_refined_cot(std::string_view reply);

std::string refine_cot(std::span<const std::string> media, MediaKind kind,
                       std::string_view question, std::string_view cot0,
                       const ChatClient& client);

inline constexpr double kDefaultTau = 0.7;

struct CurationRecord {
  std::string sample_id;
  std::optional<StructuredVideoRep> rep;
  std::optional<std::string> cot0;
  std::optional<std::string> cot;
  std::optional<std::string> final_answer;
  std::optional<bool> kept;                  // set by filtering
  std::optional<std::string> reject_reason;  // present iff kept == false
};

/// Keeps structured answers (mc/num/ocr/reg) iff their grader score is
/// positive; keeps free-form answers iff the cosine between the embedded
/// answer and the embedded reference is at least tau.
CurationRecord filter_record(CurationRecord record, const Sample& sample,
                             const EmbeddingProvider& provider, double tau = kDefaultTau);

// ---------------------------------------------------------------------------
// Dataset statistics

struct StatsOptions {
  std::size_t bin_width = 1;
  std::size_t top_k = 20;
};

struct DatasetStats {
  std::size_t count = 0;
  double mean_length = 0.0;
  std::map<std::size_t, std::size_t> length_histogram;  // bin lower edge -> count
  std::vector<std::pair<std::string, std::size_t>> top_words;
};

const std::vector<std::string>& stop_words();

DatasetStats dataset_stats(std::span<const std::string> cots, const StatsOptions& options = {});

// Rows of "section,key,value" with sections summary, length_hist and word.
void write_stats_csv(const DatasetStats& stats, std::ostream& out);

}  // namespace rftreward::curate

#endif  // RFTREWARD_CURATE_HPP_
