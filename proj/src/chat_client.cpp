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

#include <cstdlib>
#include <istream>

#include <httplib.h>

#include "rftreward/curate.hpp"
#include "rftreward/embed_client.hpp"
#include "rftreward/errors.hpp"

namespace rftreward::curate {

using nlohmann::json;

void MockChatClient::record(std::string digest, std::string reply) {
  replies_.insert_or_assign(std::move(digest), std::move(reply));
}

void MockChatClient::load_fixtures(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("digest") || !j.contains("reply") ||
        !j["digest"].is_string() || !j["reply"].is_string()) {
      throw SchemaError(lineno, "fixture lines need string fields 'digest' and 'reply'");
    }
    record(j["digest"].get<std::string>(), j["reply"].get<std::string>());
  }
}

std::string MockChatClient::complete(const ChatRequest& request) const {
  const std::string digest = request.digest();
  if (const auto it = replies_.find(digest); it != replies_.end()) return it->second;
  if (fallback_) {
    if (auto reply = fallback_(request)) return *reply;
  }
  throw ClientError("no recorded reply for request digest " + digest);
}

MockChatClient::Handler MockChatClient::echo_refinement() {
  return [](const ChatRequest& request) -> std::optional<std::string> {
    constexpr std::string_view kStart = "Original CoT: ";
    constexpr std::string_view kEnd = "\n\nOutput format:";
    const std::string_view user = request.user;
    const auto start = user.find(kStart);
    const auto end = user.rfind(kEnd);
    if (start == std::string_view::npos || end == std::string_view::npos ||
        end < start + kStart.size()) {
      return std::nullopt;
    }
    const auto cot = user.substr(start + kStart.size(), end - start - kStart.size());
    return "<think>" + std::string(cot) + "</think>";
  };
}

HttpChatClient::HttpChatClient(std::string endpoint, std::string model, int timeout_seconds)
    : endpoint_(std::move(endpoint)), model_(std::move(model)), timeout_seconds_(timeout_seconds) {
  while (!endpoint_.empty() && endpoint_.back() == '/') endpoint_.pop_back();
  if (endpoint_.empty()) throw ConfigError("empty chat endpoint");
  if (model_.empty()) throw ConfigError("chat client needs a model name");
}

std::string HttpChatClient::complete(const ChatRequest& request) const {
  json user_content = json::array();
  user_content.push_back({{"type", "text"}, {"text", request.user}});
  for (const auto& ref : request.attachments) {
    std::string payload;
    try {
      payload = frame_payload(ref);
    } catch (const ProviderError& e) {
      throw ClientError(e.what());
    }
    user_content.push_back(
        {{"type", "image_url"}, {"image_url", {{"url", "data:image/jpeg;base64," + payload}}}});
  }
  const json body = {
      {"model", model_},
      {"messages",
       json::array({{{"role", "system"}, {"content", request.system}},
                    {{"role", "user"}, {"content", std::move(user_content)}}})}};

  httplib::Client cli(endpoint_);
  cli.set_read_timeout(timeout_seconds_, 0);
  if (const char* key = std::getenv("OPENAI_API_KEY"); key && *key) {
    cli.set_bearer_token_auth(key);
  }
  const auto res = cli.Post("/v1/chat/completions", body.dump(), "application/json");
  if (!res) throw ClientError("chat endpoint unreachable at " + endpoint_);
  if (res->status != 200) {
    throw ClientError("chat endpoint returned HTTP " + std::to_string(res->status));
  }
  const auto reply = json::parse(res->body, nullptr, false);
  try {
    const auto& message = reply.at("choices").at(0).at("message");
    std::string content = message.at("content").get<std::string>();
    // Reasoning models may return their chain of thought separately.
    if (message.contains("reasoning_content") && message["reasoning_content"].is_string()) {
      content = "<think>" + message["reasoning_content"].get<std::string>() + "</think>" + content;
    }
    return content;
  } catch (const json::exception&) {
    throw ClientError("malformed chat completion response");
  }
}

}  // namespace rftreward::curate
