# Copyright 2026 The rftreward Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Reward scoring, GRPO advantages and the synthetic training loop."""

from rftreward._core import (
    ConfigError,
    ContractViolation,
    ProviderError,
    SchemaError,
    ScoringError,
    asset,
    asset_names,
    compute_advantages,
    grade,
    kl_estimate,
    parse_trace,
    rouge_l,
    run_simulation,
    score_response,
    wer_reward,
)

__all__ = [
    "ConfigError",
    "ContractViolation",
    "ProviderError",
    "SchemaError",
    "ScoringError",
    "asset",
    "asset_names",
    "compute_advantages",
    "grade",
    "kl_estimate",
    "parse_trace",
    "rouge_l",
    "run_simulation",
    "score_response",
    "wer_reward",
]
