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


#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "rftreward/errors.hpp"
#include "rftreward/graders.hpp"
#include "rftreward/grpo.hpp"
#include "rftreward/prompts.hpp"
#include "rftreward/records.hpp"
#include "rftreward/rewards.hpp"
#include "rftreward/simulate.hpp"
#include "rftreward/trace.hpp"

namespace py = pybind11;
using namespace rftreward;

namespace {

Sample sample_from_json(const std::string& line) { return records::parse_sample(line, 1).sample; }

py::dict breakdown_dict(const rewards::RewardBreakdown& b) {
  py::dict d;
  d["format"] = b.format;
  d["accuracy"] = b.accuracy;
  d["semantic"] = b.semantic;
  d["total"] = b.total;
  d["gate_open"] = b.gate_open;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Reward scoring and GRPO utilities";

  py::register_exception<ContractViolation>(m, "ContractViolation", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<SchemaError>(m, "SchemaError", PyExc_ValueError);
  py::register_exception<ScoringError>(m, "ScoringError", PyExc_RuntimeError);
  py::register_exception<ProviderError>(m, "ProviderError", PyExc_RuntimeError);

  m.def("parse_trace", [](const std::string& response) {
    const auto t = trace::parse_trace(response);
    py::dict d;
    d["think"] = t.think ? py::cast(*t.think) : py::none();
    d["answer"] = t.answer ? py::cast(*t.answer) : py::none();
    d["format_ok"] = t.format_ok;
    d["extraneous"] = t.extraneous;
    return d;
  }, py::arg("response"));

  m.def("grade", [](const std::string& sample_json, const std::string& answer) {
    return graders::grade(sample_from_json(sample_json), answer);
  }, py::arg("sample_json"), py::arg("answer"),
     "Grades an answer against a sample given as one JSON record.");

  m.def("rouge_l", py::overload_cast<std::string_view, std::string_view>(&graders::rouge_l),
        py::arg("reference"), py::arg("hypothesis"));
  m.def("wer_reward", py::overload_cast<std::string_view, std::string_view>(&graders::wer_reward),
        py::arg("reference"), py::arg("hypothesis"));

  m.def("compute_advantages",
        [](const std::vector<double>& rewards, double threshold) {
          grpo::GrpoConfig cfg;
          cfg.degenerate_std_threshold = threshold;
          return grpo::compute_advantages(rewards, cfg);
        },
        py::arg("rewards"), py::arg("degenerate_std_threshold") = 1e-8);

  m.def("kl_estimate",
        [](const std::vector<double>& theta, const std::vector<double>& ref) {
          return grpo::kl_estimate(theta, ref);
        },
        py::arg("logp_theta"), py::arg("logp_ref"));

  m.def("score_response",
        [](const std::string& sample_json, const std::string& response, std::uint64_t seed,
           std::size_t span_tokens, std::size_t frames, double weight) {
          StubEmbeddingProvider stub(seed);
          semantic::SemanticConfig cfg;
          cfg.span_tokens = span_tokens;
          cfg.frames = frames;
          cfg.w = weight;
          return breakdown_dict(rewards::score_response(sample_from_json(sample_json), response, stub, cfg));
        },
        py::arg("sample_json"), py::arg("response"), py::arg("seed") = 0,
        py::arg("span_tokens") = 64, py::arg("frames") = 16, py::arg("weight") = 2.0,
        "Scores one response with the deterministic stub embedder.");

  m.def("run_simulation",
        [](std::uint64_t seed, std::size_t steps, std::size_t tasks, std::size_t options,
           std::size_t group_size, double learning_rate) {
          sim::SimulationConfig cfg;
          cfg.seed = seed;
          cfg.steps = steps;
          cfg.tasks = tasks;
          cfg.options = options;
          cfg.group_size = group_size;
          cfg.learning_rate = learning_rate;
          const auto r = [&] {
            py::gil_scoped_release release;
            return sim::simulate(cfg);
          }();
          py::dict d;
          d["accuracy_reward"] = r.curves.accuracy_reward;
          d["response_length"] = r.curves.response_length;
          d["semantic_reward"] = r.curves.semantic_reward;
          return d;
        },
        py::arg("seed") = 7, py::arg("steps") = 500, py::arg("tasks") = 64, py::arg("options") = 4,
        py::arg("group_size") = 8, py::arg("learning_rate") = 0.1);

  m.def("asset", [](const std::string& name) { return std::string(prompts::asset(name)); },
        py::arg("name"));
  m.def("asset_names", [] {
    std::vector<std::string> out;
    for (auto n : prompts::asset_names()) out.emplace_back(n);
    return out;
  });
}
