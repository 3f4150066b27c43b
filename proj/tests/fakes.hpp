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

#ifndef RFTREWARD_TESTS_FAKES_HPP_
#define RFTREWARD_TESTS_FAKES_HPP_

#include <atomic>
#include <map>
#include <string>
#include <vector>

#include "rftreward/embedding.hpp"
#include "rftreward/errors.hpp"

namespace fakes {

// Provider returning fixed vectors per input and counting calls.
class TableProvider : public rftreward::EmbeddingProvider {
 public:
  explicit TableProvider(std::size_t dim) : dim_(dim) {}

  void set(const std::string& key, rftreward::Embedding v) { table_[key] = std::move(v); }
  void set_fail(bool fail) { fail_ = fail; }

  std::size_t dimension() const override { return dim_; }
  std::vector<rftreward::Embedding> embed_text(std::span<const std::string> in) const override {
    ++text_calls;
    return lookup(in);
  }
  std::vector<rftreward::Embedding> embed_images(std::span<const std::string> in) const override {
    ++image_calls;
    return lookup(in);
  }

  mutable std::atomic<int> text_calls{0};
  mutable std::atomic<int> image_calls{0};

 private:
  std::vector<rftreward::Embedding> lookup(std::span<const std::string> in) const {
    if (fail_) throw rftreward::ProviderError("provider offline");
    std::vector<rftreward::Embedding> out;
    for (const auto& s : in) {
      const auto it = table_.find(s);
      if (it == table_.end()) throw rftreward::ProviderError("no vector for '" + s + "'");
      out.push_back(it->second);
    }
    return out;
  }

  std::size_t dim_;
  bool fail_ = false;
  std::map<std::string, rftreward::Embedding> table_;
};

inline rftreward::Embedding axis(std::size_t dim, std::size_t i) {
  rftreward::Embedding v(dim, 0.0);
  v[i] = 1.0;
  return v;
}

}  // namespace fakes

#endif  // RFTREWARD_TESTS_FAKES_HPP_
