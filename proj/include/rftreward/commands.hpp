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

#ifndef RFTREWARD_COMMANDS_HPP_
#define RFTREWARD_COMMANDS_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace rftreward::cli {

// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitSchema = 2;

struct ScoreOptions {
  std::string samples;
  std::string rollouts;
  std::string out;
  std::string provider = "stub";  // stub | remote
  std::optional<std::string> endpoint;
  std::optional<std::string> config;
  std::size_t threads = 1;
};

struct AdvantagesOptions {
  std::string rollouts;
  std::string rewards;
  std::string out;
  std::optional<double> epsilon;
  std::optional<double> beta;
  std::optional<std::string> ratio_level;
  std::optional<std::string> config;
};

struct SimulateOptions {
  std::uint64_t seed = 7;
  std::size_t steps = 500;
  std::size_t k = 8;
  std::size_t tasks = 64;
  std::size_t options = 4;
  double lr = 0.1;
  std::optional<double> epsilon;
  std::optional<double> beta;
  std::optional<std::string> config;
  std::size_t threads = 1;
  std::string out;
};

struct CurateOptions {
  std::string stage;  // rep | cog | cross | filter | stats
  std::string samples;
  std::string in;            // curation records from the previous stage
  std::string client = "none";  // none | mock | http(s) endpoint
  std::string model = "gpt-4o-mini";
  std::string fixtures;      // mock replies, JSONL {"digest","reply"}
  std::string out;
  std::optional<double> tau;
  std::string provider = "stub";
  std::optional<std::string> endpoint;
  std::optional<std::string> config;
  std::size_t bin_width = 1;
  std::size_t top_k = 20;
};

// Each command reports problems on `err` and returns an exit code; it never
// throws. Output is written only when the command succeeds.
int cmd_score(const ScoreOptions& options, std::ostream& err);
int cmd_advantages(const AdvantagesOptions& options, std::ostream& err);
int cmd_simulate(const SimulateOptions& options, std::ostream& err);
int cmd_curate(const CurateOptions& options, std::ostream& err);

}  // namespace rftreward::cli

#endif  // RFTREWARD_COMMANDS_HPP_
