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

#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "rftreward/errors.hpp"
#include "rftreward/grpo.hpp"

using namespace rftreward;
using namespace rftreward::grpo;

namespace {

RolloutResponse one_token(double reward, double theta, double old, double ref) {
  return RolloutResponse{reward, {theta}, {old}, {ref}};
}

}  // namespace

TEST_CASE("advantages examples") {
  const GrpoConfig cfg;
  const std::vector<double> r = {1, 2, 3};
  const auto a = compute_advantages(r, cfg);
  // Oracle values: (r - 2) / sqrt(2/3).
  CHECK(a[0] == doctest::Approx(-1.224745).epsilon(1e-6));
  CHECK(a[1] == 0.0);
  CHECK(a[2] == doctest::Approx(1.224745).epsilon(1e-6));
  CHECK(compute_advantages(std::vector<double>{5, 5, 5}, cfg) == std::vector<double>{0, 0, 0});
  CHECK(compute_advantages(std::vector<double>{0.7}, cfg) == std::vector<double>{0});
  CHECK_THROWS_AS(compute_advantages(std::vector<double>{}, cfg), ContractViolation);
}

TEST_CASE("advantages are invariant to positive affine maps") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const GrpoConfig cfg;
  for (int n = 0; n < 200; ++n) {
    std::vector<double> r(2 + rng() % 10);
    for (auto& x : r) x = u(rng);
    const auto base = compute_advantages(r, cfg);
    const auto ref = oracle::advantages(r);
    const double c = u(rng) * 10.0;
    const double scale = 0.1 + std::abs(u(rng)) * 5.0;
    std::vector<double> shifted = r;
    std::vector<double> scaled = r;
    for (auto& x : shifted) x += c;
    for (auto& x : scaled) x *= scale;
    const auto a1 = compute_advantages(shifted, cfg);
    const auto a2 = compute_advantages(scaled, cfg);
    for (std::size_t i = 0; i < r.size(); ++i) {
      CHECK(base[i] == doctest::Approx(ref[i]).epsilon(1e-12));
      CHECK(a1[i] == doctest::Approx(base[i]).epsilon(1e-9));
      CHECK(a2[i] == doctest::Approx(base[i]).epsilon(1e-9));
    }
  }
}

TEST_CASE("kl estimate") {
  const std::vector<double> a = {-1.0, -2.0};
  CHECK(kl_estimate(a, a) == 0.0);
  CHECK(kl_estimate(std::vector<double>{-1.0}, std::vector<double>{-0.5}) ==
        doctest::Approx(0.148721).epsilon(1e-6));
  CHECK_THROWS_AS(kl_estimate(a, std::vector<double>{-1.0}), ContractViolation);

  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> lp(-10.0, 0.0);
  std::uniform_real_distribution<double> tiny(-1e-9, 1e-9);
  for (int n = 0; n < 2000; ++n) {
    const double x = lp(rng);
    const double y = n % 2 ? lp(rng) : std::min(0.0, x + tiny(rng));
    const std::vector<double> t{x};
    const std::vector<double> r{y};
    const double kl = kl_estimate(t, r);
    CHECK(kl >= 0.0);
    CHECK((kl == 0.0) == (x == y));
  }
}

TEST_CASE("objective examples") {
  GrpoConfig cfg;

  SUBCASE("symmetric advantages with unit ratios") {
    RolloutGroup g{"q", {one_token(0, -1, -1, -1), one_token(1, -1, -1, -1)}};
    const auto adv = compute_advantages(g.rewards(), cfg);
    CHECK(adv == std::vector<double>{-1, 1});
    const auto d = grpo_objective(g, adv, cfg);
    CHECK(d.objective == 0.0);
    CHECK(d.mean_kl == 0.0);
    CHECK(d.clip_fraction == 0.0);
  }
  SUBCASE("sequence ratios 2 and 1") {
    cfg.beta = 0.0;
    cfg.ratio_level = RatioLevel::kSequence;
    const double ln2 = std::log(2.0);
    RolloutGroup g{"q",
                   {RolloutResponse{0, {-0.5, -0.5}, {-0.5 - ln2 / 2, -0.5 - ln2 / 2}, {-1, -1}},
                    one_token(0, -1, -1, -1)}};
    const std::vector<double> adv = {1, -1};
    const auto d = grpo_objective(g, adv, cfg);
    CHECK(d.objective == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(d.clip_fraction == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  }
  SUBCASE("in-range ratios equal the unclipped surrogate") {
    cfg.beta = 0.0;
    RolloutGroup g{"q", {one_token(0, -1.0, -1.1, -1), one_token(1, -2.0, -1.95, -1)}};
    const std::vector<double> adv = {0.7, -0.3};
    const auto d = grpo_objective(g, adv, cfg);
    CHECK(d.objective == doctest::Approx(oracle::unclipped_surrogate(g, adv, false)).epsilon(1e-15));
    CHECK(d.clip_fraction == 0.0);
  }
  SUBCASE("degenerate group contributes minus beta times kl") {
    RolloutGroup g{"q", {one_token(2, -1.0, -1.3, -0.5), one_token(2, -0.7, -0.2, -0.9)}};
    const auto adv = compute_advantages(g.rewards(), cfg);
    const auto d = grpo_objective(g, adv, cfg);
    CHECK(d.objective == doctest::Approx(-cfg.beta * d.mean_kl).epsilon(1e-15));
    CHECK(d.mean_kl > 0.0);
  }
}

TEST_CASE("objective matches the oracle and respects the clip bound") {
  std::mt19937_64 rng(12);
  for (int n = 0; n < 300; ++n) {
    const auto g = oracle::random_group(rng, 4, 5);
    GrpoConfig cfg;
    cfg.beta = (n % 3) * 0.05;
    cfg.ratio_level = n % 2 ? RatioLevel::kSequence : RatioLevel::kToken;
    const auto adv = compute_advantages(g.rewards(), cfg);
    const auto d = grpo_objective(g, adv, cfg);
    const auto o = oracle::grpo(g, adv, cfg.epsilon, cfg.beta, n % 2 == 1);
    CHECK(d.objective == doctest::Approx(o.objective).epsilon(1e-12));
    CHECK(d.clip_fraction == doctest::Approx(o.clip_fraction).epsilon(1e-15));
    CHECK(d.mean_kl == doctest::Approx(o.mean_kl).epsilon(1e-12));

    cfg.beta = 0.0;
    const double clipped = grpo_objective(g, adv, cfg).objective;
    CHECK(clipped <= oracle::unclipped_surrogate(g, adv, n % 2 == 1) + 1e-12);
    cfg.epsilon = 1e300;
    CHECK(grpo_objective(g, adv, cfg).objective ==
          doctest::Approx(oracle::unclipped_surrogate(g, adv, n % 2 == 1)).epsilon(1e-12));
  }
}

TEST_CASE("group validation") {
  GrpoConfig cfg;
  const std::vector<double> one = {0.0};
  RolloutGroup g{"q", {RolloutResponse{0, {-1, -1}, {-1}, {-1, -1}}}};
  CHECK_THROWS_AS(grpo_objective(g, one, cfg), ContractViolation);
  g.responses[0] = one_token(0, std::nan(""), -1, -1);
  CHECK_THROWS_AS(grpo_objective(g, one, cfg), ContractViolation);
  g.responses[0] = one_token(0, 0.5, -1, -1);
  CHECK_THROWS_AS(grpo_objective(g, one, cfg), ContractViolation);
  g.responses[0] = one_token(0, -1, -1, -1);
  CHECK_THROWS_AS(grpo_objective(g, std::vector<double>{0, 0}, cfg), ContractViolation);
  CHECK_THROWS_AS(grpo_objective(RolloutGroup{"e", {}}, std::vector<double>{}, cfg),
                  ContractViolation);
}

TEST_CASE("config validation") {
  GrpoConfig cfg;
  CHECK(cfg.epsilon == 0.2);
  CHECK(cfg.ratio_level == RatioLevel::kToken);
  CHECK_NOTHROW(cfg.validate());
  cfg.epsilon = 1.5;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.epsilon = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  CHECK(parse_ratio_level("sequence") == RatioLevel::kSequence);
  CHECK_THROWS_AS(parse_ratio_level("word"), ConfigError);
}
