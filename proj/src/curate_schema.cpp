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

#include <optional>
#include <string>

#include "rftreward/curate.hpp"
#include "rftreward/text.hpp"

namespace rftreward::curate {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

class Checker {
 public:
  explicit Checker(std::vector<Violation>& out) : out_(out) {}

  void add(std::string path, std::string kind) {
    out_.push_back({std::move(path), std::move(kind)});
  }

  const json* field(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.contains(key)) {
      add(path + "/" + key, "missing field");
      return nullptr;
    }
    return &obj.at(key);
  }

  std::optional<std::string> string_field(const json& obj, const std::string& key,
                                          const std::string& path) {
    const json* v = field(obj, key, path);
    if (!v) return std::nullopt;
    if (!v->is_string()) {
      add(path + "/" + key, "wrong type");
      return std::nullopt;
    }
    return v->get<std::string>();
  }

  std::vector<std::string> string_list(const json& obj, const std::string& key,
                                       const std::string& path) {
    std::vector<std::string> out;
    const json* v = field(obj, key, path);
    if (!v) return out;
    if (!v->is_array()) {
      add(path + "/" + key, "wrong type");
      return out;
    }
    for (std::size_t i = 0; i < v->size(); ++i) {
      if (!(*v)[i].is_string()) {
        add(path + "/" + key + "/" + std::to_string(i), "wrong type");
        continue;
      }
      out.push_back((*v)[i].get<std::string>());
    }
    return out;
  }

 private:
  std::vector<Violation>& out_;
};

KeyElements check_key_elements(Checker& c, const json& ke, const std::string& path) {
  KeyElements k;
  k.objects = c.string_list(ke, "objects", path);
  k.actions = c.string_list(ke, "actions", path);
  k.scene = c.string_field(ke, "scene", path).value_or("");
  k.notable_features = c.string_list(ke, "notable_features", path);
  k.spatial_relations = c.string_list(ke, "spatial_relations", path);
  if (const json* h = c.field(ke, "human_attributes", path)) {
    const std::string hpath = path + "/human_attributes";
    if (h->is_object()) {
      HumanAttributes attrs;
      attrs.gender = c.string_field(*h, "gender", hpath).value_or("");
      attrs.clothing = c.string_field(*h, "clothing", hpath).value_or("");
      attrs.posture = c.string_field(*h, "posture", hpath).value_or("");
      k.human_attributes = std::move(attrs);
    } else if (!h->is_null()) {
      c.add(hpath, "wrong type");
    }
  }
  k.potential_interactions = c.string_list(ke, "potential_interactions", path);
  return k;
}

ordered_json key_elements_json(const KeyElements& k) {
  ordered_json j;
  j["objects"] = k.objects;
  j["actions"] = k.actions;
  j["scene"] = k.scene;
  j["notable_features"] = k.notable_features;
  j["spatial_relations"] = k.spatial_relations;
  if (k.human_attributes) {
    j["human_attributes"] = {{"gender", k.human_attributes->gender},
                             {"clothing", k.human_attributes->clothing},
                             {"posture", k.human_attributes->posture}};
  } else {
    j["human_attributes"] = nullptr;
  }
  j["potential_interactions"] = k.potential_interactions;
  return j;
}

}  // namespace

std::optional<long> parse_timestamp(std::string_view s) {
  if (s.size() != 8 || s[2] != ':' || s[5] != ':') return std::nullopt;
  for (std::size_t i : {0, 1, 3, 4, 6, 7}) {
    if (!text::is_digit(s[i])) return std::nullopt;
  }
  auto two = [&](std::size_t i) { return (s[i] - '0') * 10 + (s[i + 1] - '0'); };
  const long h = two(0), m = two(3), sec = two(6);
  if (m > 59 || sec > 59) return std::nullopt;
  return h * 3600 + m * 60 + sec;
}

RepValidation validate_structured_rep(const json& doc) {
  RepValidation result;
  Checker c(result.violations);
  if (!doc.is_object()) {
    c.add("", "wrong type");
    return result;
  }
  StructuredVideoRep rep;
  rep.video_caption = c.string_field(doc, "video_caption", "").value_or("");

  if (const json* frames = c.field(doc, "frames", "")) {
    if (!frames->is_array()) {
      c.add("/frames", "wrong type");
    } else if (frames->empty()) {
      c.add("/frames", "empty frames");
    } else {
      std::optional<long> previous;
      for (std::size_t i = 0; i < frames->size(); ++i) {
        const json& f = (*frames)[i];
        const std::string path = "/frames/" + std::to_string(i);
        if (!f.is_object()) {
          c.add(path, "wrong type");
          continue;
        }
        FrameMetadata meta;
        if (auto ts = c.string_field(f, "timestamp", path)) {
          meta.timestamp = *ts;
          if (const auto secs = parse_timestamp(*ts)) {
            if (previous && *secs <= *previous) {
              c.add(path + "/timestamp", "non-monotonic timestamps");
            }
            previous = secs;
          } else {
            c.add(path + "/timestamp", "timestamp format");
          }
        }
        meta.caption = c.string_field(f, "caption", path).value_or("");
        if (const json* ke = c.field(f, "key_elements", path)) {
          if (ke->is_object()) {
            meta.key_elements = check_key_elements(c, *ke, path + "/key_elements");
          } else {
            c.add(path + "/key_elements", "wrong type");
          }
        }
        rep.frames.push_back(std::move(meta));
      }
    }
  }
  if (result.violations.empty()) result.rep = std::move(rep);
  return result;
}

ordered_json StructuredVideoRep::frames_json() const {
  ordered_json arr = ordered_json::array();
  for (const auto& f : frames) {
    ordered_json j;
    j["timestamp"] = f.timestamp;
    j["caption"] = f.caption;
    j["key_elements"] = key_elements_json(f.key_elements);
    arr.push_back(std::move(j));
  }
  return arr;
}

ordered_json StructuredVideoRep::to_json() const {
  ordered_json j;
  j["video_caption"] = video_caption;
  j["frames"] = frames_json();
  return j;
}

}  // namespace rftreward::curate
