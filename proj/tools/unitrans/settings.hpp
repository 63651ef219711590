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

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "unitrans/corpus/corpus.hpp"
#include "unitrans/decoding/search.hpp"
#include "unitrans/model/config.hpp"
#include "unitrans/synthesis/synthesizer.hpp"
#include "unitrans/training/noise.hpp"
#include "unitrans/training/schedule.hpp"

namespace unitrans::cli {

/// Bad command-line usage; exits with status 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// `key = value` lines in order; '#' starts a comment.
std::vector<std::pair<std::string, std::string>> read_key_values(const std::filesystem::path& path);

/// Settings from an optional config file overlaid by command-line flags.
/// Keys are grouped by prefix: "" (training or corpus fields), "model.",
/// "noise.", "synth.", "decode.".
class Settings {
 public:
  /// Registers `--<prefix-key>` (underscores become dashes) for each key.
  void add_flags(CLI::App& app, const std::string& prefix, const std::vector<std::string>& keys,
                 const std::string& group);
  void add_config_option(CLI::App& app);

  /// File entries first, then flags, in that order.
  std::vector<std::pair<std::string, std::string>> resolved() const;
  /// Entries whose key starts with `prefix`, with the prefix stripped.
  std::vector<std::pair<std::string, std::string>> with_prefix(const std::string& prefix) const;
  bool any_with_prefix(const std::string& prefix) const;

  /// Rejects resolved keys outside the accepted prefixes.
  void check_prefixes(const std::vector<std::string>& prefixes) const;

  const std::optional<std::filesystem::path>& config_path() const { return config_path_; }

 private:
  std::optional<std::filesystem::path> config_path_;
  std::map<std::string, std::string> flags_;
  std::vector<std::string> flag_order_;
};

std::vector<std::string> training_keys();
std::vector<std::string> model_keys();
std::vector<std::string> noise_keys();
std::vector<std::string> synth_keys();
std::vector<std::string> decode_keys();
std::vector<std::string> corpus_keys();

void apply_training(training::TrainingConfig& c, const std::vector<std::pair<std::string, std::string>>& kv);
void apply_model(model::ModelConfig& c, const std::vector<std::pair<std::string, std::string>>& kv);
void apply_noise(training::NoiseConfig& c, const std::vector<std::pair<std::string, std::string>>& kv);
void apply_synth(synthesis::SynthConfig& c, const std::vector<std::pair<std::string, std::string>>& kv);
void apply_decode(decoding::DecodeConfig& c, const std::vector<std::pair<std::string, std::string>>& kv);
corpus::CorpusSpec corpus_spec(const std::vector<std::pair<std::string, std::string>>& kv);

nlohmann::json to_json(const training::NoiseConfig& c);
nlohmann::json to_json(const synthesis::SynthConfig& c);
nlohmann::json to_json(const decoding::DecodeConfig& c);

/// Creates `dir` and writes `dir/run.json`.
void write_run_json(const std::filesystem::path& dir, const nlohmann::json& run);

}  // namespace unitrans::cli
