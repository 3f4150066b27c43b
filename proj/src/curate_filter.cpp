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

#include <algorithm>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

#include "rftreward/curate.hpp"
#include "rftreward/errors.hpp"
#include "rftreward/graders.hpp"
#include "rftreward/text.hpp"

namespace rftreward::curate {

CurationRecord filter_record(CurationRecord record, const Sample& sample,
                             const EmbeddingProvider& provider, double tau) {
  if (!record.final_answer) {
    throw ContractViolation("record '" + record.sample_id + "' has no final answer");
  }
  if (sample.answer_type == AnswerType::kFreeForm) {
    const std::vector<std::string> texts = {*record.final_answer, sample.ground_truth};
    double cos = 0.0;
    try {
      const auto vecs = provider.embed_text(texts);
      if (vecs.size() != 2) throw ProviderError("provider returned a short text batch");
      for (const auto& v : vecs) check_embedding(v, provider.dimension());
      cos = cosine(vecs[0], vecs[1]);
    } catch (const ProviderError& e) {
      throw ScoringError(sample.id, e.what());
    }
    record.kept = cos >= tau;
    if (!*record.kept) record.reject_reason = "low semantic consistency";
  } else {
    record.kept = graders::grade(sample, *record.final_answer) > 0.0;
    if (!*record.kept) record.reject_reason = "incorrect final answer";
  }
  if (*record.kept) record.reject_reason.reset();
  return record;
}

const std::vector<std::string>& stop_words() {
  static const std::vector<std::string> kWords = {
      "a",     "about", "after", "all",   "also",  "an",    "and",   "any",   "are",  "as",
      "at",    "be",    "been",  "but",   "by",    "can",   "could", "did",   "do",   "does",
      "for",   "from",  "had",   "has",   "have",  "he",    "her",   "his",   "how",  "i",
      "if",    "in",    "into",  "is",    "it",    "its",   "let",   "me",    "more", "my",
      "no",    "not",   "of",    "on",    "or",    "other", "our",   "out",   "she",  "so",
      "some",  "such",  "than",  "that",  "the",   "their", "them",  "then",  "there",
      "these", "they",  "this",  "those", "to",    "up",    "was",   "we",    "were", "what",
      "when",  "which", "while", "who",   "will",  "with",  "would", "you",   "your"};
  return kWords;
}

DatasetStats dataset_stats(std::span<const std::string> cots, const StatsOptions& options) {
  if (options.bin_width == 0) throw ConfigError("histogram bin width must be >= 1");
  const std::unordered_set<std::string> stop(stop_words().begin(), stop_words().end());
  DatasetStats stats;
  std::unordered_map<std::string, std::size_t> freq;
  std::size_t total_tokens = 0;
  for (const auto& cot : cots) {
    const auto tokens = text::split_whitespace(cot);
    ++stats.count;
    total_tokens += tokens.size();
    ++stats.length_histogram[tokens.size() / options.bin_width * options.bin_width];
    for (const auto& tok : tokens) {
      std::string w = text::to_lower(tok);
      const auto first = std::find_if(w.begin(), w.end(), text::is_alnum);
      const auto last = std::find_if(w.rbegin(), w.rend(), text::is_alnum).base();
      if (first >= last) continue;
      w = std::string(first, last);
      if (!stop.contains(w)) ++freq[w];
    }
  }
  if (stats.count > 0) {
    stats.mean_length = static_cast<double>(total_tokens) / static_cast<double>(stats.count);
  }
  stats.top_words.assign(freq.begin(), freq.end());
  std::sort(stats.top_words.begin(), stats.top_words.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  if (stats.top_words.size() > options.top_k) stats.top_words.resize(options.top_k);
  return stats;
}

void write_stats_csv(const DatasetStats& stats, std::ostream& out) {
  out << "section,key,value\n";
  out << "summary,count," << stats.count << '\n';
  out << "summary,mean_length," << stats.mean_length << '\n';
  for (const auto& [bin, n] : stats.length_histogram) out << "length_hist," << bin << ',' << n << '\n';
  for (const auto& [word, n] : stats.top_words) out << "word," << word << ',' << n << '\n';
}

}  // namespace rftreward::curate
