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

#include <iostream>

#include <CLI11.hpp>

#include "rftreward/commands.hpp"

namespace cli = rftreward::cli;

int main(int argc, char** argv) {
  CLI::App app{"Reward scoring, GRPO diagnostics, simulation and CoT curation"};
  app.require_subcommand(1);

  cli::ScoreOptions score;
  auto* s = app.add_subcommand("score", "Score rollouts against their samples");
  s->add_option("--samples", score.samples, "Sample JSONL")->required();
  s->add_option("--rollouts", score.rollouts, "Rollout JSONL")->required();
  s->add_option("--out", score.out, "Reward report JSONL ('-' for stdout)")->required();
  s->add_option("--provider", score.provider, "Embedding provider")
      ->check(CLI::IsMember({"stub", "remote"}));
  s->add_option("--endpoint", score.endpoint, "Embedding sidecar URL for --provider remote");
  s->add_option("--config", score.config, "key=value config file");
  s->add_option("--threads", score.threads, "Scoring threads")->check(CLI::PositiveNumber);

  cli::AdvantagesOptions adv;
  auto* a = app.add_subcommand("advantages", "Group advantages and objective diagnostics");
  a->add_option("--rollouts", adv.rollouts, "Rollout JSONL")->required();
  a->add_option("--rewards", adv.rewards, "Reward report JSONL")->required();
  a->add_option("--out", adv.out, "Diagnostics JSONL ('-' for stdout)")->required();
  a->add_option("--epsilon", adv.epsilon, "Clip half-width");
  a->add_option("--beta", adv.beta, "KL coefficient");
  a->add_option("--ratio-level", adv.ratio_level, "token or sequence");
  a->add_option("--config", adv.config, "key=value config file");

  cli::SimulateOptions sim;
  auto* m = app.add_subcommand("simulate", "Run the synthetic GRPO training simulation");
  m->add_option("--seed", sim.seed, "RNG seed");
  m->add_option("--steps", sim.steps, "Training steps");
  m->add_option("--k", sim.k, "Group size");
  m->add_option("--tasks", sim.tasks, "Number of synthetic tasks");
  m->add_option("--options", sim.options, "Choices per task");
  m->add_option("--lr", sim.lr, "Learning rate");
  m->add_option("--epsilon", sim.epsilon, "Clip half-width");
  m->add_option("--beta", sim.beta, "KL coefficient");
  m->add_option("--config", sim.config, "key=value config file");
  m->add_option("--threads", sim.threads, "Scoring threads")->check(CLI::PositiveNumber);
  m->add_option("--out", sim.out, "Curves CSV ('-' for stdout)")->required();

  cli::CurateOptions cur;
  auto* c = app.add_subcommand("curate", "Run one stage of the CoT curation pipeline");
  c->add_option("--stage", cur.stage, "Pipeline stage")
      ->required()
      ->check(CLI::IsMember({"rep", "cog", "cross", "filter", "stats"}));
  c->add_option("--samples", cur.samples, "Sample JSONL");
  c->add_option("--in", cur.in, "Curation records from the previous stage");
  c->add_option("--client", cur.client, "none, mock or a chat-completions endpoint URL");
  c->add_option("--model", cur.model, "Model name sent to the endpoint");
  c->add_option("--fixtures", cur.fixtures, "Recorded replies for --client mock");
  c->add_option("--out", cur.out, "Output path ('-' for stdout)")->required();
  c->add_option("--tau", cur.tau, "Free-form similarity threshold");
  c->add_option("--provider", cur.provider, "Embedding provider")
      ->check(CLI::IsMember({"stub", "remote"}));
  c->add_option("--endpoint", cur.endpoint, "Embedding sidecar URL");
  c->add_option("--config", cur.config, "key=value config file");
  c->add_option("--bin-width", cur.bin_width, "Length histogram bin width")
      ->check(CLI::PositiveNumber);
  c->add_option("--top-k", cur.top_k, "Number of frequent words");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitSchema;
  }

  if (*s) return cli::cmd_score(score, std::cerr);
  if (*a) return cli::cmd_advantages(adv, std::cerr);
  if (*m) return cli::cmd_simulate(sim, std::cerr);
  return cli::cmd_curate(cur, std::cerr);
}
