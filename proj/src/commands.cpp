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

#include "rftreward/commands.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

#include "rftreward/config.hpp"
#include "rftreward/curate.hpp"
#include "rftreward/embed_client.hpp"
#include "rftreward/errors.hpp"
#include "rftreward/grpo.hpp"
#include "rftreward/records.hpp"
#include "rftreward/rewards.hpp"
#include "rftreward/simulate.hpp"
#include "rftreward/text.hpp"

namespace rftreward::cli {
namespace {

using nlohmann::ordered_json;

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return in;
}

void write_output(const std::string& path, const std::string& data) {
  if (path.empty() || path == "-") {
    std::cout << data << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << data;
  if (!out.flush()) throw std::runtime_error("failed writing '" + path + "'");
}

EngineConfig engine_config(const std::optional<std::string>& path) {
  return path ? load_config(*path) : EngineConfig{};
}

// Prefixes the file name onto schema errors raised while reading `path`.
template <typename Fn>
auto with_file(const std::string& path, Fn fn) {
  try {
    return fn();
  } catch (const SchemaError& e) {
    throw SchemaError(e.line(), path + ": " + e.what());
  }
}

struct SampleIndex {
  std::map<std::string, records::SampleRecord> by_id;
  std::vector<std::string> order;  // ids in file order
};

SampleIndex read_sample_index(const std::string& path) {
  return with_file(path, [&] {
    auto in = open_input(path);
    SampleIndex index;
    records::for_each_line(in, [&](std::string_view line, std::size_t line_no) {
      auto rec = records::parse_sample(line, line_no);
      const std::string id = rec.sample.id;
      index.order.push_back(id);
      if (!index.by_id.emplace(id, std::move(rec)).second) {
        throw SchemaError(line_no, "line " + std::to_string(line_no) + ": duplicate sample id '" +
                                       id + "'");
      }
    });
    return index;
  });
}

const Sample& lookup(const SampleIndex& index, const std::string& id, std::size_t line_no) {
  const auto it = index.by_id.find(id);
  if (it == index.by_id.end()) {
    throw SchemaError(line_no, "line " + std::to_string(line_no) + ": unknown sample id '" + id + "'");
  }
  return it->second.sample;
}

std::unique_ptr<EmbeddingProvider> make_provider(const std::string& kind,
                                                 const std::optional<std::string>& endpoint) {
  if (kind == "stub") return std::make_unique<StubEmbeddingProvider>();
  if (kind == "remote") {
    return std::make_unique<HttpEmbeddingProvider>(resolve_embed_endpoint(endpoint));
  }
  throw ConfigError("unknown provider '" + kind + "' (expected stub or remote)");
}

template <typename Fn>
int guarded(std::ostream& err, Fn fn) {
  try {
    fn();
    return kExitOk;
  } catch (const SchemaError& e) {
    err << "schema error: " << e.what() << '\n';
    return kExitSchema;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitSchema;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace

int cmd_score(const ScoreOptions& o, std::ostream& err) {
  return guarded(err, [&] {
    const EngineConfig cfg = engine_config(o.config);
    const auto provider = make_provider(o.provider, o.endpoint);
    const auto samples = read_sample_index(o.samples);

    std::vector<records::RolloutRecord> rollouts;
    std::vector<rewards::ScoringJob> jobs;
    with_file(o.rollouts, [&] {
      auto in = open_input(o.rollouts);
      records::for_each_line(in, [&](std::string_view line, std::size_t line_no) {
        auto rec = records::parse_rollout(line, line_no);
        lookup(samples, rec.sample_id, line_no);
        rollouts.push_back(std::move(rec));
      });
      return 0;
    });
    for (const auto& rec : rollouts) {
      const Sample* sample = &samples.by_id.at(rec.sample_id).sample;
      for (const auto& r : rec.responses) jobs.push_back({sample, r.text});
    }

    rewards::BatchOptions batch;
    batch.threads = o.threads;
    const auto scores = rewards::score_batch(jobs, *provider, cfg.semantic, batch);

    std::string out;
    std::size_t j = 0;
    for (const auto& rec : rollouts) {
      for (std::size_t i = 0; i < rec.responses.size(); ++i) {
        out += records::serialize_report({rec.sample_id, i, scores[j++]});
        out += '\n';
      }
    }
    write_output(o.out, out);
  });
}

int cmd_advantages(const AdvantagesOptions& o, std::ostream& err) {
  return guarded(err, [&] {
    EngineConfig cfg = engine_config(o.config);
    if (o.epsilon) cfg.grpo.epsilon = *o.epsilon;
    if (o.beta) cfg.grpo.beta = *o.beta;
    if (o.ratio_level) cfg.grpo.ratio_level = grpo::parse_ratio_level(*o.ratio_level);
    cfg.grpo.validate();

    const auto reports = with_file(o.rewards, [&] {
      auto in = open_input(o.rewards);
      return records::read_reports(in);
    });

    std::string out;
    std::size_t next = 0;
    with_file(o.rollouts, [&] {
      auto in = open_input(o.rollouts);
      records::for_each_line(in, [&](std::string_view line, std::size_t line_no) {
        const auto rec = records::parse_rollout(line, line_no);
        const auto fail = [&](const std::string& what) {
          throw SchemaError(line_no, "line " + std::to_string(line_no) + ": group '" +
                                         rec.sample_id + "': " + what);
        };
        grpo::RolloutGroup group;
        group.query_id = rec.sample_id;
        for (std::size_t i = 0; i < rec.responses.size(); ++i) {
          if (next >= reports.size() || reports[next].sample_id != rec.sample_id ||
              reports[next].response_index != i) {
            fail("group size mismatch between rewards and rollouts");
          }
          const auto& r = rec.responses[i];
          group.responses.push_back(
              {reports[next++].breakdown.total, r.logp_theta, r.logp_old, r.logp_ref});
        }
        try {
          group.validate();
        } catch (const ContractViolation& e) {
          fail(e.what());
        }
        const auto adv = grpo::compute_advantages(group.rewards(), cfg.grpo);
        const auto diag = grpo::grpo_objective(group, adv, cfg.grpo);
        ordered_json doc;
        doc["sample_id"] = rec.sample_id;
        doc["advantages"] = adv;
        doc["objective"] = diag.objective;
        doc["clip_fraction"] = diag.clip_fraction;
        doc["mean_kl"] = diag.mean_kl;
        out += doc.dump();
        out += '\n';
      });
      return 0;
    });
    if (next != reports.size()) {
      throw SchemaError(0, o.rewards + ": group size mismatch between rewards and rollouts (" +
                               std::to_string(reports.size() - next) + " unmatched reports)");
    }
    write_output(o.out, out);
  });
}

int cmd_simulate(const SimulateOptions& o, std::ostream& err) {
  return guarded(err, [&] {
    const EngineConfig cfg = engine_config(o.config);
    sim::SimulationConfig s;
    s.seed = o.seed;
    s.steps = o.steps;
    s.group_size = o.k;
    s.tasks = o.tasks;
    s.options = o.options;
    s.learning_rate = o.lr;
    s.threads = o.threads;
    s.grpo = cfg.grpo;
    s.semantic = cfg.semantic;
    if (o.epsilon) s.grpo.epsilon = *o.epsilon;
    if (o.beta) s.grpo.beta = *o.beta;
    s.validate();
    const auto result = sim::simulate(s);
    std::ostringstream csv;
    sim::write_curves(result.curves, csv);
    write_output(o.out, csv.str());
  });
}

namespace {

std::unique_ptr<curate::ChatClient> make_chat_client(const CurateOptions& o) {
  if (o.client == "none") return nullptr;
  if (o.client == "mock") {
    auto mock = std::make_unique<curate::MockChatClient>();
    if (!o.fixtures.empty()) {
      with_file(o.fixtures, [&] {
        auto in = open_input(o.fixtures);
        mock->load_fixtures(in);
        return 0;
      });
    }
    if (o.stage == "cross") mock->set_fallback(curate::MockChatClient::echo_refinement());
    return mock;
  }
  if (o.client.starts_with("http://") || o.client.starts_with("https://")) {
    return std::make_unique<curate::HttpChatClient>(o.client, o.model);
  }
  throw ConfigError("unknown client '" + o.client + "' (expected none, mock or an http endpoint)");
}

std::string prompt_bundle(const std::string& sample_id, const std::string& stage,
                          const curate::ChatRequest& request) {
  ordered_json doc;
  doc["sample_id"] = sample_id;
  doc["stage"] = stage;
  doc["digest"] = request.digest();
  doc["system"] = request.system;
  doc["user"] = request.user;
  doc["attachments"] = request.attachments;
  return doc.dump();
}

// Reply of the representation stage: the JSON object it contains, possibly
// inside a fenced block.
nlohmann::json rep_reply_json(std::string_view reply) {
  const auto first = reply.find('{');
  const auto last = reply.rfind('}');
  if (first == std::string_view::npos || last == std::string_view::npos || last < first) {
    throw ClientError("representation reply holds no JSON object");
  }
  try {
    return nlohmann::json::parse(reply.substr(first, last - first + 1));
  } catch (const nlohmann::json::parse_error& e) {
    throw ClientError(std::string("representation reply is not valid JSON: ") + e.what());
  }
}

std::vector<curate::CurationRecord> read_records(const std::string& path) {
  if (path.empty()) throw ConfigError("--in is required for this stage");
  return with_file(path, [&] {
    auto in = open_input(path);
    return records::read_curation(in);
  });
}

bool rejected(const curate::CurationRecord& r) { return r.kept && !*r.kept; }

}  // namespace

int cmd_curate(const CurateOptions& o, std::ostream& err) {
  return guarded(err, [&] {
    EngineConfig cfg = engine_config(o.config);
    if (o.tau) cfg.tau = *o.tau;
    cfg.validate();
    const auto& stage = o.stage;
    if (stage != "rep" && stage != "cog" && stage != "cross" && stage != "filter" &&
        stage != "stats") {
      throw ConfigError("unknown stage '" + stage + "'");
    }

    std::string out;
    if (stage == "stats") {
      std::vector<std::string> cots;
      for (const auto& r : read_records(o.in)) {
        if (rejected(r)) continue;
        if (r.cot) {
          cots.push_back(*r.cot);
        } else if (r.cot0) {
          cots.push_back(*r.cot0);
        }
      }
      std::ostringstream csv;
      curate::write_stats_csv(curate::dataset_stats(cots, {o.bin_width, o.top_k}), csv);
      write_output(o.out, csv.str());
      return;
    }

    const auto samples = read_sample_index(o.samples);
    const auto sample_for = [&](const std::string& id) -> const Sample& {
      const auto it = samples.by_id.find(id);
      if (it == samples.by_id.end()) throw SchemaError(0, o.in + ": unknown sample id '" + id + "'");
      return it->second.sample;
    };

    if (stage == "filter") {
      const auto provider = make_provider(o.provider, o.endpoint);
      std::size_t kept = 0;
      std::size_t total = 0;
      for (auto& r : read_records(o.in)) {
        if (!rejected(r)) {
          const Sample& sample = sample_for(r.sample_id);
          r = curate::filter_record(std::move(r), sample, *provider, cfg.tau);
          ++total;
          if (*r.kept) ++kept;
        }
        out += records::serialize_curation(r);
        out += '\n';
      }
      err << "kept " << kept << " of " << total << " records\n";
      write_output(o.out, out);
      return;
    }

    const auto client = make_chat_client(o);

    if (stage == "rep") {
      for (const auto& id : samples.order) {
        const Sample* s = &samples.by_id.at(id).sample;
        const auto request = curate::build_rep_prompt(*s);
        if (!client) {
          out += prompt_bundle(s->id, stage, request);
        } else {
          curate::CurationRecord r;
          r.sample_id = s->id;
          if (s->media.kind != MediaKind::kVideo) {
            throw ConfigError("sample '" + s->id + "': the rep stage handles video samples only");
          }
          const auto checked = curate::validate_structured_rep(rep_reply_json(client->complete(request)));
          if (checked.ok()) {
            r.rep = checked.rep;
          } else {
            r.kept = false;
            r.reject_reason = "invalid structured representation at " +
                              checked.violations.front().path + ": " +
                              checked.violations.front().kind;
          }
          out += records::serialize_curation(r);
        }
        out += '\n';
      }
      write_output(o.out, out);
      return;
    }

    for (auto& r : read_records(o.in)) {
      if (rejected(r)) {
        out += records::serialize_curation(r);
        out += '\n';
        continue;
      }
      const Sample& s = sample_for(r.sample_id);
      const std::string question = curate::format_question(s);
      if (stage == "cog") {
        if (!r.rep) throw SchemaError(0, o.in + ": record '" + r.sample_id + "' has no rep");
        const auto request = curate::build_cog_prompt(question, *r.rep, s.answer_type);
        if (!client) {
          out += prompt_bundle(r.sample_id, stage, request);
        } else {
          auto reply = curate::split_cog_reply(client->complete(request));
          r.cot0 = std::move(reply.cot);
          r.final_answer = std::move(reply.final_answer);
          out += records::serialize_curation(r);
        }
      } else {
        if (!r.cot0) throw SchemaError(0, o.in + ": record '" + r.sample_id + "' has no cot0");
        const auto media = s.media.frame_refs();
        if (!client) {
          out += prompt_bundle(r.sample_id, stage,
                               curate::build_cross_prompt(question, *r.cot0, media, s.media.kind));
        } else {
          r.cot = curate::refine_cot(media, s.media.kind, question, *r.cot0, *client);
          out += records::serialize_curation(r);
        }
      }
      out += '\n';
    }
    write_output(o.out, out);
  });
}

}  // namespace rftreward::cli
