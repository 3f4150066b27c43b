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

#ifndef RFTREWARD_GRPO_HPP_
#define RFTREWARD_GRPO_HPP_

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rftreward::grpo {

enum class RatioLevel {
  kToken,     // per-token ratios, min taken per token, then averaged
  kSequence,  // one ratio per response from summed log-probabilities
};

RatioLevel parse_ratio_level(std::string_view name);
std::string_view ratio_level_name(RatioLevel level) noexcept;

struct GrpoConfig {
  double epsilon = 0.2;  // clip half-width
  double beta = 0.04;    // KL coefficient
  RatioLevel ratio_level = RatioLevel::kToken;
  double degenerate_std_threshold = 1e-8;

  // Throws ConfigError unless epsilon is in (0, 1], beta >= 0 and the
  // threshold is non-negative.
  void validate() const;
};

struct RolloutResponse {
  double reward = 0.0;
  std::vector<double> logp_theta;
  std::vector<double> logp_old;
  std::vector<double> logp_ref;

  std::size_t tokens() const { return logp_theta.size(); }
};

struct RolloutGroup {
  std::string query_id;
  std::vector<RolloutResponse> responses;

  std::vector<double> rewards() const;
  // K >= 1, T_i >= 1, equal vector lengths per response, finite
  // log-probabilities <= 0. Throws ContractViolation.
  void validate() const;
};

/// Group-normalized advantages (r_i - mean) / std with the population
/// standard deviation. All zeros when std <= cfg.degenerate_std_threshold.
std::vector<double> compute_advantages(std::span<const double> rewards, const GrpoConfig& cfg);

/// Mean over tokens of exp(d) - d - 1 with d = logp_ref - logp_theta.
/// Non-negative, and zero only for identical inputs.
double kl_estimate(std::span<const double> logp_theta, std::span<const double> logp_ref);

struct ObjectiveDiagnostics {
  double objective = 0.0;
  double clip_fraction = 0.0;  // share of (response, token) pairs on the clipped branch
  double mean_kl = 0.0;
};

/// Clipped surrogate minus beta times the mean per-response KL estimate.
/// Accepts any epsilon > 0 so that very wide clip ranges can be evaluated.
ObjectiveDiagnostics grpo_objective(const RolloutGroup& group,
                                    std::span<const double> advantages,
                                    const GrpoConfig& cfg);

}  // namespace rftreward::grpo

#endif  // RFTREWARD_GRPO_HPP_
