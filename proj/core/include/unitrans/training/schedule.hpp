// Copyright 2026 The unitrans Authors
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

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

namespace unitrans::training {

struct TrainingConfig {
  double lr = 3e-5;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.98;
  double adam_eps = 1e-6;
  double end_lr = 0.0;
  double power = 1.0;
  std::size_t warmup_steps = 0;
  /// Schedule horizon; 0 means max_steps.
  std::size_t total_steps = 0;
  double label_smoothing = 0.2;
  std::size_t max_steps = 2000;
  std::size_t max_tokens = 2048;
  /// Global-norm clip; 0 disables.
  double clip_norm = 1.0;
  std::size_t eval_every = 200;
  /// 0 writes only the final checkpoint.
  std::size_t checkpoint_every = 0;
  std::size_t log_every = 1;
  std::uint64_t seed = 0;

  std::size_t horizon() const { return total_steps == 0 ? max_steps : total_steps; }
  /// Throws ValidationError on out-of-range fields.
  void validate() const;
  bool operator==(const TrainingConfig&) const = default;
};

/// Sets one field from its string form; unknown keys and unparsable values
/// throw ValidationError. Used by config files and CLI overrides alike.
void set_field(TrainingConfig& config, const std::string& key, const std::string& value);

void to_json(nlohmann::json& j, const TrainingConfig& c);
void from_json(const nlohmann::json& j, TrainingConfig& c);

/// Linear warmup from 0, then
///   (lr - end_lr) * (1 - (step - warmup) / (horizon - warmup))^power + end_lr.
/// Steps past the horizon return end_lr.
double poly_lr(std::size_t step, const TrainingConfig& config);

}  // namespace unitrans::training
