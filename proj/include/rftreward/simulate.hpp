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

#ifndef RFTREWARD_SIMULATE_HPP_
#define RFTREWARD_SIMULATE_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "rftreward/embedding.hpp"
#include "rftreward/grpo.hpp"
#include "rftreward/sample.hpp"
#include "rftreward/semantic.hpp"

namespace rftreward::sim {

/// One synthetic multiple-choice query. Each option has a canned response;
/// the correct one is the longest and describes the task's frames, the others
/// are shorter and mostly describe some other scene.
struct SyntheticTask {
  Sample sample;
  std::size_t correct = 0;
  std::string caption;                 // what the stub frames "show"
  std::vector<std::string> responses;  // one per option
};

/// Builds `count` tasks with `options` choices and registers each task's
/// frame captions with `provider`.
std::vector<SyntheticTask> make_tasks(std::uint64_t seed, std::size_t count,
                                      std::size_t options, StubEmbeddingProvider& provider);

/// Tabular softmax policy: one row of logits per task.
class SoftmaxPolicy {
 public:
  SoftmaxPolicy(std::size_t tasks, std::size_t options, double temperature = 1.0);

  std::size_t tasks() const { return tasks_; }
  std::size_t options() const { return options_; }
  double temperature() const { return temperature_; }

  std::span<double> logits(std::size_t task);
  std::span<const double> logits(std::size_t task) const;
  std::vector<double> probabilities(std::size_t task) const;
  std::vector<double> log_probabilities(std::size_t task) const;

 private:
  std::size_t tasks_;
  std::size_t options_;
  double temperature_;
  std::vector<double> logits_;
};

std::vector<double> log_softmax(std::span<const double> logits, double temperature);

/// K sampled actions of one task with their advantages and their
/// log-probabilities under the policy that sampled them.
struct ActionBatch {
  std::vector<std::size_t> actions;
  std::vector<double> advantages;
  std::vector<double> logp_old;
};

/// GRPO objective of one task's batch as a function of that task's logits:
/// each sampled action is a one-token response fed to grpo::grpo_objective.
double batch_objective(std::span<const double> logits, std::span<const double> ref_logp,
                       const ActionBatch& batch, const grpo::GrpoConfig& cfg,
                       double temperature);

/// Exact gradient of batch_objective with respect to the logits (the clipped
/// branch contributes nothing where it is active).
std::vector<double> batch_gradient(std::span<const double> logits,
                                   std::span<const double> ref_logp, const ActionBatch& batch,
                                   const grpo::GrpoConfig& cfg, double temperature);

struct SimulationConfig {
  std::uint64_t seed = 7;
  std::size_t steps = 500;
  std::size_t group_size = 8;  // K
  std::size_t tasks = 64;
  std::size_t options = 4;     // C
  double learning_rate = 0.1;
  double temperature = 1.0;
  std::size_t updates_per_batch = 1;
  std::size_t threads = 1;  // scoring workers; results do not depend on it
  grpo::GrpoConfig grpo;
  semantic::SemanticConfig semantic;

  void validate() const;
};

struct TrainingCurves {
  std::vector<double> accuracy_reward;
  std::vector<double> response_length;
  std::vector<double> semantic_reward;

  std::size_t size() const { return accuracy_reward.size(); }
  bool operator==(const TrainingCurves&) const = default;
};

struct SimulationResult {
  TrainingCurves curves;
  SoftmaxPolicy policy;
  SoftmaxPolicy reference;
};

/// Runs GRPO on the synthetic tasks: each step samples K responses per task,
/// scores them with the full reward stack (stub provider), normalizes rewards
/// per task and takes gradient-ascent steps on the clipped surrogate with KL
/// to the initial policy. Deterministic for a fixed config.
SimulationResult simulate(const SimulationConfig& config);

TrainingCurves run_simulation(std::uint64_t seed, std::size_t steps, std::size_t group_size,
                              const grpo::GrpoConfig& cfg,
                              const semantic::SemanticConfig& scfg);

// CSV with header "step,acc_reward,resp_len,sem_reward"; steps count from 1.
void write_curves(const TrainingCurves& curves, std::ostream& out);
void emit_curves(const TrainingCurves& curves, const std::filesystem::path& path);
TrainingCurves read_curves(std::istream& in);

double total_variation(std::span<const double> p, std::span<const double> q);

}  // namespace rftreward::sim

#endif  // RFTREWARD_SIMULATE_HPP_
