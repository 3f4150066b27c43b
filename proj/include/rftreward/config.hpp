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

#ifndef RFTREWARD_CONFIG_HPP_
#define RFTREWARD_CONFIG_HPP_

#include <iosfwd>
#include <string>

#include "rftreward/grpo.hpp"
#include "rftreward/semantic.hpp"

namespace rftreward {

/// Defaults shared by the CLI commands, loaded from a key=value text file:
///
///   # comment
///   M = 64          description span tokens
///   F = 16          sampled frames
///   w = 2.0         semantic scaling constant
///   epsilon = 0.2
///   beta = 0.04
///   tau = 0.7       free-form curation threshold
///   ratio_level = token | sequence
///
/// Blank lines and '#' comments are ignored. Unknown keys, repeated keys and
/// unparsable values throw ConfigError naming the line.
struct EngineConfig {
  semantic::SemanticConfig semantic;
  grpo::GrpoConfig grpo;
  double tau = 0.7;

  void validate() const;
};

EngineConfig parse_config(std::istream& in);
EngineConfig load_config(const std::string& path);

}  // namespace rftreward

#endif  // RFTREWARD_CONFIG_HPP_
