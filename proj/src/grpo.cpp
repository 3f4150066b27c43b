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

#include "rftreward/grpo.hpp"

#include <algorithm>
#include <cmath>

#include "rftreward/errors.hpp"

namespace rftreward::grpo {
namespace {

// exp(d) - d - 1 without cancellation near d = 0.
double k3_term(double d) {
  if (std::abs(d) < 1e-3) {
    return d * d * (0.5 + d * (1.0 / 6.0 + d * (1.0 / 24.0 + d / 120.0)));
  }
  return std::expm1(d) - d;
}

struct ClipOutcome {
  double value;
  bool clipped;
};

ClipOutcome clipped_term(double ratio, double advantage, double epsilon) {
  const double unclipped = ratio * advantage;
  const double bounded = std::clamp(ratio, 1.0 - epsilon, 1.0 + epsilon) * advantage;
  return bounded < unclipped ? ClipOutcome{bounded, true} : ClipOutcome{unclipped, false};
}

}  // namespace

RatioLevel parse_ratio_level(std::string_view name) {
  if (name == "token") return RatioLevel::kToken;
  if (name == "sequence") return RatioLevel::kSequence;
  throw ConfigError("ratio_level must be 'token' or 'sequence', got '" + std::string(name) + "'");
}

std::string_view ratio_level_name(RatioLevel level) noexcept {
  return level == RatioLevel::kToken ? "token" : "sequence";
}

void GrpoConfig::validate() const {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw ConfigError("epsilon must lie in (0, 1]");
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw ConfigError("beta must be >= 0");
  if (!(degenerate_std_threshold >= 0.0)) {
    throw ConfigError("degenerate_std_threshold must be >= 0");
  }
}

std::vector<double> RolloutGroup::rewards() const {
  std::vector<double> r;
  r.reserve(responses.size());
  for (const auto& resp : responses) r.push_back(resp.reward);
  return r;
}

void RolloutGroup::validate() const {
  if (responses.empty()) throw ContractViolation("rollout group '" + query_id + "' is empty");
  for (std::size_t i = 0; i < responses.size(); ++i) {
    const auto& r = responses[i];
    const std::string where = "group '" + query_id + "' response " + std::to_string(i);
    if (r.logp_theta.empty()) throw ContractViolation(where + " has no tokens");
    if (r.logp_old.size() != r.tokens() || r.logp_ref.size() != r.tokens()) {
      throw ContractViolation(where + ": log-probability vectors differ in length");
    }
    for (const auto* v : {&r.logp_theta, &r.logp_old, &r.logp_ref}) {
      for (double x : *v) {
        if (!std::isfinite(x)) throw ContractViolation(where + ": non-finite log-probability");
        if (x > 0.0) throw ContractViolation(where + ": positive log-probability");
      }
    }
  }
}

std::vector<double> compute_advantages(std::span<const double> rewards, const GrpoConfig& cfg) {
  if (rewards.empty()) throw ContractViolation("advantages need at least one reward");
  const double k = static_cast<double>(rewards.size());
  double mean = 0.0;
  for (double r : rewards) {
    if (!std::isfinite(r)) throw ContractViolation("non-finite reward");
    mean += r;
  }
  mean /= k;
  double var = 0.0;
  for (double r : rewards) var += (r - mean) * (r - mean);
  const double std_dev = std::sqrt(var / k);

  std::vector<double> adv(rewards.size(), 0.0);
  if (std_dev <= cfg.degenerate_std_threshold) return adv;
  for (std::size_t i = 0; i < rewards.size(); ++i) adv[i] = (rewards[i] - mean) / std_dev;
  return adv;
}

double kl_estimate(std::span<const double> logp_theta, std::span<const double> logp_ref) {
  if (logp_theta.size() != logp_ref.size()) {
    throw ContractViolation("kl_estimate: length mismatch");
  }
  if (logp_theta.empty()) return 0.0;
  double sum = 0.0;
  for (std::size_t t = 0; t < logp_theta.size(); ++t) {
    sum += k3_term(logp_ref[t] - logp_theta[t]);
  }
  return sum / static_cast<double>(logp_theta.size());
}

ObjectiveDiagnostics grpo_objective(const RolloutGroup& group,
                                    std::span<const double> advantages,
                                    const GrpoConfig& cfg) {
  group.validate();
  if (advantages.size() != group.responses.size()) {
    throw ContractViolation("advantages length differs from group size");
  }
  if (!(cfg.epsilon > 0.0)) throw ContractViolation("epsilon must be positive");
  if (!(cfg.beta >= 0.0)) throw ContractViolation("beta must be non-negative");

  double surrogate = 0.0;
  double kl = 0.0;
  std::size_t clipped_pairs = 0;
  std::size_t total_pairs = 0;
  for (std::size_t i = 0; i < group.responses.size(); ++i) {
    const auto& r = group.responses[i];
    const double a = advantages[i];
    const std::size_t T = r.tokens();
    total_pairs += T;
    if (cfg.ratio_level == RatioLevel::kToken) {
      double term = 0.0;
      for (std::size_t t = 0; t < T; ++t) {
        const auto c = clipped_term(std::exp(r.logp_theta[t] - r.logp_old[t]), a, cfg.epsilon);
        term += c.value;
        clipped_pairs += c.clipped ? 1 : 0;
      }
      surrogate += term / static_cast<double>(T);
    } else {
      double log_ratio = 0.0;
      for (std::size_t t = 0; t < T; ++t) log_ratio += r.logp_theta[t] - r.logp_old[t];
      const auto c = clipped_term(std::exp(log_ratio), a, cfg.epsilon);
      surrogate += c.value;
      clipped_pairs += c.clipped ? T : 0;
    }
    kl += kl_estimate(r.logp_theta, r.logp_ref);
  }

  const double k = static_cast<double>(group.responses.size());
  ObjectiveDiagnostics d;
  d.mean_kl = kl / k;
  d.objective = surrogate / k - cfg.beta * d.mean_kl;
  d.clip_fraction = static_cast<double>(clipped_pairs) / static_cast<double>(total_pairs);
  return d;
}

}  // namespace rftreward::grpo
