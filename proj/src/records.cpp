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

#include "rftreward/records.hpp"

#include <cmath>
#include <istream>

#include "rftreward/errors.hpp"

namespace rftreward::records {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string at_line(std::size_t line_no, const std::string& what) {
  return "line " + std::to_string(line_no) + ": " + what;
}

ordered_json parse_object(std::string_view line, std::size_t line_no) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(line);
  } catch (const json::parse_error& e) {
    throw SchemaError(line_no, at_line(line_no, std::string("invalid JSON: ") + e.what()));
  }
  if (!doc.is_object()) throw SchemaError(line_no, at_line(line_no, "record must be an object"));
  return doc;
}

const ordered_json& require(const ordered_json& doc, const char* key, std::size_t line_no) {
  const auto it = doc.find(key);
  if (it == doc.end()) {
    throw SchemaError(line_no, at_line(line_no, std::string("missing field '") + key + "'"));
  }
  return *it;
}

std::string require_string(const ordered_json& doc, const char* key, std::size_t line_no) {
  const auto& v = require(doc, key, line_no);
  if (!v.is_string()) {
    throw SchemaError(line_no, at_line(line_no, std::string("field '") + key + "' must be a string"));
  }
  return v.get<std::string>();
}

std::vector<std::string> string_array(const ordered_json& v, const char* key, std::size_t line_no) {
  if (!v.is_array()) {
    throw SchemaError(line_no, at_line(line_no, std::string("field '") + key + "' must be an array"));
  }
  std::vector<std::string> out;
  for (const auto& e : v) {
    if (!e.is_string()) {
      throw SchemaError(line_no,
                        at_line(line_no, std::string("field '") + key + "' must hold strings"));
    }
    out.push_back(e.get<std::string>());
  }
  return out;
}

std::vector<double> number_array(const ordered_json& doc, const char* key, std::size_t line_no) {
  const auto it = doc.find(key);
  if (it == doc.end()) return {};
  if (!it->is_array()) {
    throw SchemaError(line_no, at_line(line_no, std::string("field '") + key + "' must be an array"));
  }
  std::vector<double> out;
  for (const auto& e : *it) {
    if (!e.is_number()) {
      throw SchemaError(line_no,
                        at_line(line_no, std::string("field '") + key + "' must hold numbers"));
    }
    out.push_back(e.get<double>());
  }
  return out;
}

double require_number(const ordered_json& doc, const char* key, std::size_t line_no) {
  const auto& v = require(doc, key, line_no);
  if (!v.is_number()) {
    throw SchemaError(line_no, at_line(line_no, std::string("field '") + key + "' must be a number"));
  }
  return v.get<double>();
}

template <typename Parse>
auto read_lines(std::istream& in, Parse parse) {
  std::vector<decltype(parse(std::string_view{}, std::size_t{}))> out;
  for_each_line(in, [&](std::string_view line, std::size_t line_no) {
    out.push_back(parse(line, line_no));
  });
  return out;
}

}  // namespace

void for_each_line(std::istream& in,
                   const std::function<void(std::string_view, std::size_t)>& fn) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    fn(line, line_no);
  }
}

SampleRecord parse_sample(std::string_view line, std::size_t line_no) {
  auto doc = parse_object(line, line_no);
  SampleRecord rec;
  Sample& s = rec.sample;
  s.id = require_string(doc, "id", line_no);
  const auto& media = require(doc, "media", line_no);
  if (!media.is_object()) throw SchemaError(line_no, at_line(line_no, "field 'media' must be an object"));
  const std::string kind = require_string(media, "kind", line_no);
  if (kind == "video") {
    s.media.kind = MediaKind::kVideo;
    s.media.frames = string_array(require(media, "frames", line_no), "frames", line_no);
  } else if (kind == "image") {
    s.media.kind = MediaKind::kImage;
    s.media.path = require_string(media, "path", line_no);
  } else {
    throw SchemaError(line_no, at_line(line_no, "media kind must be 'video' or 'image'"));
  }
  s.question = require_string(doc, "question", line_no);
  try {
    s.answer_type = parse_answer_type(require_string(doc, "answer_type", line_no));
  } catch (const ConfigError& e) {
    throw SchemaError(line_no, at_line(line_no, e.what()));
  }
  s.ground_truth = require_string(doc, "ground_truth", line_no);
  if (const auto it = doc.find("options"); it != doc.end()) {
    s.options = string_array(*it, "options", line_no);
  }
  try {
    validate_sample(s);
  } catch (const ContractViolation& e) {
    throw SchemaError(line_no, at_line(line_no, e.what()));
  }
  for (const char* key : {"id", "media", "question", "answer_type", "ground_truth", "options"}) {
    doc.erase(key);
  }
  rec.extra = std::move(doc);
  return rec;
}

std::string serialize_sample(const SampleRecord& record) {
  const Sample& s = record.sample;
  ordered_json doc;
  doc["id"] = s.id;
  ordered_json media;
  if (s.media.kind == MediaKind::kVideo) {
    media["kind"] = "video";
    media["frames"] = s.media.frames;
  } else {
    media["kind"] = "image";
    media["path"] = s.media.path;
  }
  doc["media"] = std::move(media);
  doc["question"] = s.question;
  doc["answer_type"] = answer_type_name(s.answer_type);
  doc["ground_truth"] = s.ground_truth;
  if (!s.options.empty()) doc["options"] = s.options;
  for (const auto& [k, v] : record.extra.items()) doc[k] = v;
  return doc.dump();
}

std::vector<SampleRecord> read_samples(std::istream& in) { return read_lines(in, parse_sample); }

RolloutRecord parse_rollout(std::string_view line, std::size_t line_no) {
  const auto doc = parse_object(line, line_no);
  RolloutRecord rec;
  rec.sample_id = require_string(doc, "sample_id", line_no);
  const auto& responses = require(doc, "responses", line_no);
  if (!responses.is_array()) {
    throw SchemaError(line_no, at_line(line_no, "field 'responses' must be an array"));
  }
  for (const auto& r : responses) {
    if (!r.is_object()) throw SchemaError(line_no, at_line(line_no, "response must be an object"));
    RolloutText t;
    t.text = require_string(r, "text", line_no);
    t.logp_theta = number_array(r, "logp_theta", line_no);
    t.logp_old = number_array(r, "logp_old", line_no);
    t.logp_ref = number_array(r, "logp_ref", line_no);
    if (t.logp_old.size() != t.logp_theta.size() || t.logp_ref.size() != t.logp_theta.size()) {
      throw SchemaError(line_no, at_line(line_no, "log-probability vectors differ in length"));
    }
    rec.responses.push_back(std::move(t));
  }
  return rec;
}

std::string serialize_rollout(const RolloutRecord& record) {
  ordered_json doc;
  doc["sample_id"] = record.sample_id;
  doc["responses"] = ordered_json::array();
  for (const auto& r : record.responses) {
    ordered_json o;
    o["text"] = r.text;
    o["logp_theta"] = r.logp_theta;
    o["logp_old"] = r.logp_old;
    o["logp_ref"] = r.logp_ref;
    doc["responses"].push_back(std::move(o));
  }
  return doc.dump();
}

std::vector<RolloutRecord> read_rollouts(std::istream& in) { return read_lines(in, parse_rollout); }

nlohmann::ordered_json to_json(const rewards::RewardBreakdown& b) {
  ordered_json doc;
  doc["format"] = b.format;
  doc["accuracy"] = b.accuracy;
  doc["semantic"] = b.semantic;
  doc["total"] = b.total;
  doc["gate_open"] = b.gate_open;
  return doc;
}

RewardReport parse_report(std::string_view line, std::size_t line_no) {
  const auto doc = parse_object(line, line_no);
  RewardReport r;
  r.sample_id = require_string(doc, "sample_id", line_no);
  const auto& idx = require(doc, "response_index", line_no);
  if (!idx.is_number_unsigned()) {
    throw SchemaError(line_no, at_line(line_no, "field 'response_index' must be a non-negative integer"));
  }
  r.response_index = idx.get<std::size_t>();
  r.breakdown.format = require_number(doc, "format", line_no);
  r.breakdown.accuracy = require_number(doc, "accuracy", line_no);
  r.breakdown.semantic = require_number(doc, "semantic", line_no);
  r.breakdown.total = require_number(doc, "total", line_no);
  const auto& gate = require(doc, "gate_open", line_no);
  if (!gate.is_boolean()) throw SchemaError(line_no, at_line(line_no, "field 'gate_open' must be a boolean"));
  r.breakdown.gate_open = gate.get<bool>();
  if (!std::isfinite(r.breakdown.total)) {
    throw SchemaError(line_no, at_line(line_no, "field 'total' must be finite"));
  }
  return r;
}

std::string serialize_report(const RewardReport& report) {
  ordered_json doc;
  doc["sample_id"] = report.sample_id;
  doc["response_index"] = report.response_index;
  const auto parts = to_json(report.breakdown);
  for (const auto& [k, v] : parts.items()) doc[k] = v;
  return doc.dump();
}

std::vector<RewardReport> read_reports(std::istream& in) { return read_lines(in, parse_report); }

curate::CurationRecord parse_curation(std::string_view line, std::size_t line_no) {
  const auto doc = parse_object(line, line_no);
  curate::CurationRecord rec;
  rec.sample_id = require_string(doc, "sample_id", line_no);
  if (const auto it = doc.find("rep"); it != doc.end() && !it->is_null()) {
    auto checked = curate::validate_structured_rep(json(*it));
    if (!checked.ok()) {
      const auto& v = checked.violations.front();
      throw SchemaError(line_no, at_line(line_no, "rep" + v.path + ": " + v.kind));
    }
    rec.rep = std::move(checked.rep);
  }
  const auto opt_string = [&](const char* key) -> std::optional<std::string> {
    const auto it = doc.find(key);
    if (it == doc.end() || it->is_null()) return std::nullopt;
    if (!it->is_string()) {
      throw SchemaError(line_no, at_line(line_no, std::string("field '") + key + "' must be a string"));
    }
    return it->get<std::string>();
  };
  rec.cot0 = opt_string("cot0");
  rec.cot = opt_string("cot");
  rec.final_answer = opt_string("final_answer");
  rec.reject_reason = opt_string("reject_reason");
  if (const auto it = doc.find("kept"); it != doc.end() && !it->is_null()) {
    if (!it->is_boolean()) throw SchemaError(line_no, at_line(line_no, "field 'kept' must be a boolean"));
    rec.kept = it->get<bool>();
  }
  return rec;
}

std::string serialize_curation(const curate::CurationRecord& record) {
  ordered_json doc;
  doc["sample_id"] = record.sample_id;
  if (record.rep) doc["rep"] = record.rep->to_json();
  if (record.cot0) doc["cot0"] = *record.cot0;
  if (record.cot) doc["cot"] = *record.cot;
  if (record.final_answer) doc["final_answer"] = *record.final_answer;
  if (record.kept) doc["kept"] = *record.kept;
  if (record.reject_reason) doc["reject_reason"] = *record.reject_reason;
  return doc.dump();
}

std::vector<curate::CurationRecord> read_curation(std::istream& in) {
  return read_lines(in, parse_curation);
}

}  // namespace rftreward::records
