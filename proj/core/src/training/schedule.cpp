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

#include "unitrans/training/schedule.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <map>

#include "unitrans/common/error.hpp"

namespace unitrans::training {

namespace {

template <typename V>
V parse_number(const std::string& key, const std::string& value) {
  V out{};
  const char* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw ValidationError("training config: cannot parse " + key + " = '" + value + "'");
  }
  return out;
}

using Setter = std::function<void(TrainingConfig&, const std::string&, const std::string&)>;

template <typename V>
Setter field(V TrainingConfig::*member) {
  return [member](TrainingConfig& c, const std::string& k, const std::string& v) {
    c.*member = parse_number<V>(k, v);
  };
}

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"lr", field(&TrainingConfig::lr)},
      {"adam_beta1", field(&TrainingConfig::adam_beta1)},
      {"adam_beta2", field(&TrainingConfig::adam_beta2)},
      {"adam_eps", field(&TrainingConfig::adam_eps)},
      {"end_lr", field(&TrainingConfig::end_lr)},
      {"power", field(&TrainingConfig::power)},
      {"warmup_steps", field(&TrainingConfig::warmup_steps)},
      {"total_steps", field(&TrainingConfig::total_steps)},
      {"label_smoothing", field(&TrainingConfig::label_smoothing)},
      {"max_steps", field(&TrainingConfig::max_steps)},
      {"max_tokens", field(&TrainingConfig::max_tokens)},
      {"clip_norm", field(&TrainingConfig::clip_norm)},
      {"eval_every", field(&TrainingConfig::eval_every)},
      {"checkpoint_every", field(&TrainingConfig::checkpoint_every)},
      {"log_every", field(&TrainingConfig::log_every)},
      {"seed", field(&TrainingConfig::seed)},
  };
  return table;
}

}  // namespace

void TrainingConfig::validate() const {
  if (!(lr > 0.0) || !std::isfinite(lr)) throw ValidationError("training config: lr must be > 0");
  if (!(end_lr >= 0.0)) throw ValidationError("training config: end_lr must be >= 0");
  if (!(adam_beta1 > 0.0 && adam_beta1 < 1.0) || !(adam_beta2 > 0.0 && adam_beta2 < 1.0)) {
    throw ValidationError("training config: Adam betas must lie in (0, 1)");
  }
  if (!(adam_eps > 0.0)) throw ValidationError("training config: adam_eps must be > 0");
  if (!(label_smoothing >= 0.0 && label_smoothing < 1.0)) {
    throw ValidationError("training config: label_smoothing must lie in [0, 1)");
  }
  if (!(power > 0.0)) throw ValidationError("training config: power must be > 0");
  if (max_steps == 0) throw ValidationError("training config: max_steps must be >= 1");
  if (max_tokens == 0) throw ValidationError("training config: max_tokens must be >= 1");
  if (warmup_steps >= horizon() && warmup_steps > 0) {
    throw ValidationError("training config: warmup_steps must be below the schedule horizon");
  }
  if (!(clip_norm >= 0.0)) throw ValidationError("training config: clip_norm must be >= 0");
  if (eval_every == 0) throw ValidationError("training config: eval_every must be >= 1");
  if (log_every == 0) throw ValidationError("training config: log_every must be >= 1");
}

void set_field(TrainingConfig& config, const std::string& key, const std::string& value) {
  const auto it = setters().find(key);
  if (it == setters().end()) throw ValidationError("training config: unknown key '" + key + "'");
  it->second(config, key, value);
}

void to_json(nlohmann::json& j, const TrainingConfig& c) {
  j = nlohmann::json{{"lr", c.lr},
                     {"adam_beta1", c.adam_beta1},
                     {"adam_beta2", c.adam_beta2},
                     {"adam_eps", c.adam_eps},
                     {"end_lr", c.end_lr},
                     {"power", c.power},
                     {"warmup_steps", c.warmup_steps},
                     {"total_steps", c.total_steps},
                     {"label_smoothing", c.label_smoothing},
                     {"max_steps", c.max_steps},
                     {"max_tokens", c.max_tokens},
                     {"clip_norm", c.clip_norm},
                     {"eval_every", c.eval_every},
                     {"checkpoint_every", c.checkpoint_every},
                     {"log_every", c.log_every},
                     {"seed", c.seed}};
}

void from_json(const nlohmann::json& j, TrainingConfig& c) {
  TrainingConfig d;
  c.lr = j.value("lr", d.lr);
  c.adam_beta1 = j.value("adam_beta1", d.adam_beta1);
  c.adam_beta2 = j.value("adam_beta2", d.adam_beta2);
  c.adam_eps = j.value("adam_eps", d.adam_eps);
  c.end_lr = j.value("end_lr", d.end_lr);
  c.power = j.value("power", d.power);
  c.warmup_steps = j.value("warmup_steps", d.warmup_steps);
  c.total_steps = j.value("total_steps", d.total_steps);
  c.label_smoothing = j.value("label_smoothing", d.label_smoothing);
  c.max_steps = j.value("max_steps", d.max_steps);
  c.max_tokens = j.value("max_tokens", d.max_tokens);
  c.clip_norm = j.value("clip_norm", d.clip_norm);
  c.eval_every = j.value("eval_every", d.eval_every);
  c.checkpoint_every = j.value("checkpoint_every", d.checkpoint_every);
  c.log_every = j.value("log_every", d.log_every);
  c.seed = j.value("seed", d.seed);
}

double poly_lr(std::size_t step, const TrainingConfig& config) {
  const std::size_t horizon = config.horizon();
  if (step >= horizon) return config.end_lr;
  const std::size_t warmup = config.warmup_steps;
  if (step < warmup) {
    return config.lr * static_cast<double>(step) / static_cast<double>(warmup);
  }
  const double progress =
      static_cast<double>(step - warmup) / static_cast<double>(horizon - warmup);
  const double decay = std::pow(1.0 - progress, config.power);
  return config.lr * decay + config.end_lr * (1.0 - decay);
}

}  // namespace unitrans::training
