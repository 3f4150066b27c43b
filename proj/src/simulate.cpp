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

#include "rftreward/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

#include "rftreward/errors.hpp"
#include "rftreward/rewards.hpp"
#include "rftreward/text.hpp"

namespace rftreward::sim {
namespace {

constexpr std::size_t kFramesPerTask = 4;

const std::vector<std::string> kAdjectives = {"red",  "small", "striped", "wooden",
                                              "bright", "old", "tall",   "blue",
                                              "yellow", "green", "shiny", "dusty"};
const std::vector<std::string> kNouns = {"cat",   "dog",   "bicycle", "teapot", "child", "robot",
                                         "kite",  "boat",  "laptop",  "horse",  "guitar", "lamp"};
const std::vector<std::string> kVerbs = {"rests", "moves", "sits", "spins", "waits", "leans"};
const std::vector<std::string> kPreps = {"on", "near", "beside", "under", "behind"};
const std::vector<std::string> kPlaces = {"table", "window",    "bench", "doorway",
                                          "fountain", "staircase", "shelf", "car"};

// Platform-independent uniform draw in [0, 1).
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t pick(std::mt19937_64& rng, std::size_t n) {
  return std::min(n - 1, static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n)));
}

struct Scene {
  std::string adjective, noun, verb, prep, place;

  std::string caption() const {
    return "a " + adjective + " " + noun + " " + verb + " " + prep + " the " + place;
  }
};

Scene random_scene(std::mt19937_64& rng) {
  return {kAdjectives[pick(rng, kAdjectives.size())], kNouns[pick(rng, kNouns.size())],
          kVerbs[pick(rng, kVerbs.size())], kPreps[pick(rng, kPreps.size())],
          kPlaces[pick(rng, kPlaces.size())]};
}

std::string grounded_response(const Scene& s, char letter) {
  const std::string L(1, letter);
  return "<think>The question asks what happens in the video. The video shows " + s.caption() +
         ". I can see " + s.caption() + " from the beginning to the end, and the " + s.noun +
         " stays " + s.prep + " the " + s.place + " throughout. Option " + L +
         " describes the " + s.adjective + " " + s.noun +
         ", which matches the visual evidence. Let me double-check the other options: none of "
         "them mention the " + s.noun + ". So the answer is " + L + ".</think><answer>" + L +
         "</answer>";
}

std::string hallucinated_response(const Scene& imagined, char letter, bool hedge) {
  const std::string L(1, letter);
  std::string think = "The question asks what happens in the video. It looks like " +
                      imagined.caption() + ".";
  if (hedge) think += " Maybe the " + imagined.noun + " is the main subject.";
  think += " So the answer is " + L + ".";
  return "<think>" + think + "</think><answer>" + L + "</answer>";
}

std::string glance_response(const Scene& s, char letter) {
  const std::string L(1, letter);
  return "<think>The question asks what happens in the video. The video shows " + s.caption() +
         ". I think option " + L + " fits best.</think><answer>" + L + "</answer>";
}

}  // namespace

std::vector<SyntheticTask> make_tasks(std::uint64_t seed, std::size_t count, std::size_t options,
                                      StubEmbeddingProvider& provider) {
  if (options < 2 || options > 26) throw ContractViolation("option count must lie in [2, 26]");
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<SyntheticTask> tasks;
  tasks.reserve(count);
  for (std::size_t t = 0; t < count; ++t) {
    SyntheticTask task;
    const Scene truth = random_scene(rng);
    task.caption = truth.caption();
    task.correct = pick(rng, options);

    Sample& s = task.sample;
    s.id = "sim-" + std::to_string(t);
    s.media.kind = MediaKind::kVideo;
    for (std::size_t f = 0; f < kFramesPerTask; ++f) {
      s.media.frames.push_back("sim/" + std::to_string(t) + "/frame_" + std::to_string(f));
      provider.set_caption(s.media.frames.back(), task.caption);
    }
    s.question = "Which option best describes the video?";
    s.answer_type = AnswerType::kMultipleChoice;
    s.ground_truth = std::string(1, static_cast<char>('A' + task.correct));

    for (std::size_t o = 0; o < options; ++o) {
      const char letter = static_cast<char>('A' + o);
      if (o == task.correct) {
        s.options.push_back(truth.caption());
        task.responses.push_back(grounded_response(truth, letter));
        continue;
      }
      const Scene distractor = random_scene(rng);
      s.options.push_back(distractor.caption());
      // Most wrong answers come with a description of the wrong scene; some
      // describe the right scene and still pick the wrong option.
      if (pick(rng, 3) == 0) {
        task.responses.push_back(glance_response(truth, letter));
      } else {
        task.responses.push_back(hallucinated_response(distractor, letter, pick(rng, 2) == 0));
      }
    }
    tasks.push_back(std::move(task));
  }
  return tasks;
}

SoftmaxPolicy::SoftmaxPolicy(std::size_t tasks, std::size_t options, double temperature)
    : tasks_(tasks), options_(options), temperature_(temperature),
      logits_(tasks * options, 0.0) {
  if (options == 0) throw ContractViolation("policy needs at least one option");
  if (!(temperature > 0.0)) throw ContractViolation("temperature must be positive");
}

std::span<double> SoftmaxPolicy::logits(std::size_t task) {
  return std::span<double>(logits_).subspan(task * options_, options_);
}

std::span<const double> SoftmaxPolicy::logits(std::size_t task) const {
  return std::span<const double>(logits_).subspan(task * options_, options_);
}

std::vector<double> log_softmax(std::span<const double> logits, double temperature) {
  const double max = *std::max_element(logits.begin(), logits.end()) / temperature;
  double sum = 0.0;
  for (double z : logits) sum += std::exp(z / temperature - max);
  const double log_norm = max + std::log(sum);
  std::vector<double> out(logits.size());
  for (std::size_t i = 0; i < logits.size(); ++i) out[i] = logits[i] / temperature - log_norm;
  return out;
}

std::vector<double> SoftmaxPolicy::log_probabilities(std::size_t task) const {
  return log_softmax(logits(task), temperature_);
}

std::vector<double> SoftmaxPolicy::probabilities(std::size_t task) const {
  auto p = log_probabilities(task);
  for (double& x : p) x = std::exp(x);
  return p;
}

double batch_objective(std::span<const double> logits, std::span<const double> ref_logp,
                       const ActionBatch& batch, const grpo::GrpoConfig& cfg,
                       double temperature) {
  const auto logp = log_softmax(logits, temperature);
  grpo::RolloutGroup group;
  group.responses.reserve(batch.actions.size());
  for (std::size_t i = 0; i < batch.actions.size(); ++i) {
    const std::size_t a = batch.actions[i];
    grpo::RolloutResponse r;
    r.logp_theta = {std::min(0.0, logp[a])};
    r.logp_old = {batch.logp_old[i]};
    r.logp_ref = {ref_logp[a]};
    group.responses.push_back(std::move(r));
  }
  return grpo::grpo_objective(group, batch.advantages, cfg).objective;
}

std::vector<double> batch_gradient(std::span<const double> logits,
                                   std::span<const double> ref_logp, const ActionBatch& batch,
                                   const grpo::GrpoConfig& cfg, double temperature) {
  const auto logp = log_softmax(logits, temperature);
  const std::size_t C = logits.size();
  std::vector<double> prob(C);
  for (std::size_t j = 0; j < C; ++j) prob[j] = std::exp(logp[j]);

  const double K = static_cast<double>(batch.actions.size());
  std::vector<double> grad(C, 0.0);
  for (std::size_t i = 0; i < batch.actions.size(); ++i) {
    const std::size_t a = batch.actions[i];
    const double A = batch.advantages[i];
    const double ratio = std::exp(logp[a] - batch.logp_old[i]);
    const double bounded = std::clamp(ratio, 1.0 - cfg.epsilon, 1.0 + cfg.epsilon) * A;
    // d/dz of min(ratio*A, clip(ratio)*A): ratio*A*dlogp on the unclipped
    // branch, zero on the clipped one.
    double coeff = bounded < ratio * A ? 0.0 : A * ratio;
    // d/dz of -beta*(exp(d) - d - 1), d = logp_ref - logp.
    coeff += cfg.beta * std::expm1(ref_logp[a] - logp[a]);
    coeff /= K;
    // dlogp[a]/dz_j = (1[j == a] - p_j) / temperature
    for (std::size_t j = 0; j < C; ++j) {
      grad[j] += coeff * ((j == a ? 1.0 : 0.0) - prob[j]) / temperature;
    }
  }
  return grad;
}

void SimulationConfig::validate() const {
  if (steps < 1) throw ConfigError("steps must be >= 1");
  if (group_size < 2) throw ConfigError("group size K must be >= 2");
  if (tasks < 1) throw ConfigError("tasks must be >= 1");
  if (options < 2 || options > 26) throw ConfigError("options must lie in [2, 26]");
  if (!(learning_rate > 0.0)) throw ConfigError("learning rate must be positive");
  if (!(temperature > 0.0)) throw ConfigError("temperature must be positive");
  if (updates_per_batch < 1) throw ConfigError("updates_per_batch must be >= 1");
  grpo.validate();
  semantic.validate();
}

SimulationResult simulate(const SimulationConfig& config) {
  config.validate();
  StubEmbeddingProvider provider(config.seed);
  const auto tasks = make_tasks(config.seed, config.tasks, config.options, provider);
  SoftmaxPolicy policy(config.tasks, config.options, config.temperature);
  const SoftmaxPolicy reference = policy;
  std::vector<std::vector<double>> ref_logp(config.tasks);
  for (std::size_t t = 0; t < config.tasks; ++t) ref_logp[t] = reference.log_probabilities(t);

  std::vector<std::size_t> response_tokens;
  std::vector<std::vector<std::size_t>> lengths(config.tasks);
  for (std::size_t t = 0; t < config.tasks; ++t) {
    for (const auto& r : tasks[t].responses) {
      lengths[t].push_back(text::split_whitespace(r).size());
    }
  }

  std::mt19937_64 rng(config.seed);
  const std::size_t K = config.group_size;
  TrainingCurves curves;
  std::vector<ActionBatch> batches(config.tasks);
  std::vector<rewards::ScoringJob> jobs(config.tasks * K);
  const rewards::BatchOptions batch_options{config.threads, 64};

  for (std::size_t step = 0; step < config.steps; ++step) {
    for (std::size_t t = 0; t < config.tasks; ++t) {
      const auto logp = policy.log_probabilities(t);
      ActionBatch& b = batches[t];
      b.actions.assign(K, 0);
      b.logp_old.assign(K, 0.0);
      for (std::size_t i = 0; i < K; ++i) {
        // Inverse-CDF draw; the last option absorbs rounding slack.
        double u = uniform01(rng);
        std::size_t a = 0;
        for (; a + 1 < config.options; ++a) {
          u -= std::exp(logp[a]);
          if (u < 0.0) break;
        }
        b.actions[i] = a;
        b.logp_old[i] = logp[a];
        jobs[t * K + i] = {&tasks[t].sample, tasks[t].responses[a]};
      }
    }

    const auto scores = rewards::score_batch(jobs, provider, config.semantic, batch_options);

    double acc = 0.0, len = 0.0, sem = 0.0;
    for (std::size_t t = 0; t < config.tasks; ++t) {
      std::vector<double> group_rewards(K);
      for (std::size_t i = 0; i < K; ++i) {
        const auto& s = scores[t * K + i];
        group_rewards[i] = s.total;
        acc += s.accuracy;
        sem += s.semantic;
        len += static_cast<double>(lengths[t][batches[t].actions[i]]);
      }
      batches[t].advantages = grpo::compute_advantages(group_rewards, config.grpo);
      auto row = policy.logits(t);
      for (std::size_t u = 0; u < config.updates_per_batch; ++u) {
        const auto g = batch_gradient(row, ref_logp[t], batches[t], config.grpo,
                                      config.temperature);
        for (std::size_t j = 0; j < row.size(); ++j) {
          row[j] += config.learning_rate * g[j];
          if (!std::isfinite(row[j])) {
            throw std::runtime_error("policy diverged at step " + std::to_string(step + 1) +
                                     "; lower the learning rate or beta");
          }
        }
      }
    }
    const double n = static_cast<double>(config.tasks * K);
    curves.accuracy_reward.push_back(acc / n);
    curves.response_length.push_back(len / n);
    curves.semantic_reward.push_back(sem / n);
  }
  return {std::move(curves), std::move(policy), reference};
}

TrainingCurves run_simulation(std::uint64_t seed, std::size_t steps, std::size_t group_size,
                              const grpo::GrpoConfig& cfg,
                              const semantic::SemanticConfig& scfg) {
  SimulationConfig config;
  config.seed = seed;
  config.steps = steps;
  config.group_size = group_size;
  config.grpo = cfg;
  config.semantic = scfg;
  return simulate(config).curves;
}

void write_curves(const TrainingCurves& curves, std::ostream& out) {
  out << "step,acc_reward,resp_len,sem_reward\n";
  const auto old_precision = out.precision(17);
  for (std::size_t i = 0; i < curves.size(); ++i) {
    out << (i + 1) << ',' << curves.accuracy_reward[i] << ',' << curves.response_length[i] << ','
        << curves.semantic_reward[i] << '\n';
  }
  out.precision(old_precision);
}

void emit_curves(const TrainingCurves& curves, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  write_curves(curves, out);
  out.flush();
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

TrainingCurves read_curves(std::istream& in) {
  TrainingCurves curves;
  std::string line;
  if (!std::getline(in, line) || line != "step,acc_reward,resp_len,sem_reward") {
    throw SchemaError(1, "missing curve CSV header");
  }
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    std::vector<double> values;
    while (std::getline(row, cell, ',')) {
      try {
        values.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw SchemaError(lineno, "bad number '" + cell + "'");
      }
    }
    if (values.size() != 4) throw SchemaError(lineno, "expected 4 columns");
    curves.accuracy_reward.push_back(values[1]);
    curves.response_length.push_back(values[2]);
    curves.semantic_reward.push_back(values[3]);
  }
  return curves;
}

double total_variation(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw ContractViolation("distributions differ in size");
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
  return 0.5 * s;
}

}  // namespace rftreward::sim
