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

#include "rftreward/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>

#include "rftreward/errors.hpp"
#include "rftreward/text.hpp"

namespace rftreward {
namespace {

double to_double(const std::string& value, std::size_t line_no) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != value.size() || !std::isfinite(v)) {
    throw ConfigError("config line " + std::to_string(line_no) + ": '" + value + "' is not a number");
  }
  return v;
}

std::size_t to_count(const std::string& value, std::size_t line_no) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ConfigError("config line " + std::to_string(line_no) + ": '" + value +
                      "' is not a non-negative integer");
  }
  return v;
}

}  // namespace

void EngineConfig::validate() const {
  semantic.validate();
  grpo.validate();
  if (!(tau >= -1.0 && tau <= 1.0)) throw ConfigError("tau must lie in [-1, 1]");
}

EngineConfig parse_config(std::istream& in) {
  EngineConfig cfg;
  std::set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (text::is_blank(line)) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key(text::trim(std::string_view(line).substr(0, eq)));
    const std::string value(text::trim(std::string_view(line).substr(eq + 1)));
    if (!seen.insert(key).second) {
      throw ConfigError("config line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
    if (key == "M") {
      cfg.semantic.span_tokens = to_count(value, line_no);
    } else if (key == "F") {
      cfg.semantic.frames = to_count(value, line_no);
    } else if (key == "w") {
      cfg.semantic.w = to_double(value, line_no);
    } else if (key == "epsilon") {
      cfg.grpo.epsilon = to_double(value, line_no);
    } else if (key == "beta") {
      cfg.grpo.beta = to_double(value, line_no);
    } else if (key == "tau") {
      cfg.tau = to_double(value, line_no);
    } else if (key == "ratio_level") {
      cfg.grpo.ratio_level = grpo::parse_ratio_level(value);
    } else {
      throw ConfigError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

EngineConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(in);
}

}  // namespace rftreward
