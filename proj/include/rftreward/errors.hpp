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

#ifndef RFTREWARD_ERRORS_HPP_
#define RFTREWARD_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace rftreward {

// A caller broke a documented precondition (bad length, out-of-range value).
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Invalid configuration: unknown answer type, bad config key, bad hyperparameter.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The embedding provider failed or returned vectors violating its contract.
class ProviderError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Semantic scoring failed for one sample; carries the sample id.
class ScoringError : public std::runtime_error {
 public:
  ScoringError(std::string sample_id, const std::string& what)
      : std::runtime_error("sample '" + sample_id + "': " + what),
        sample_id_(std::move(sample_id)) {}

  const std::string& sample_id() const noexcept { return sample_id_; }

 private:
  std::string sample_id_;
};

// Input file did not match its record schema. `line` is 1-based, 0 if unknown.
class SchemaError : public std::runtime_error {
 public:
  SchemaError(std::size_t line, const std::string& what)
      : std::runtime_error(what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A chat-completion client failed or replied in an unusable format.
class ClientError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rftreward

#endif  // RFTREWARD_ERRORS_HPP_
