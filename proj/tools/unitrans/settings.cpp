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

#include "settings.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "unitrans/common/error.hpp"

namespace unitrans::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  const auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

std::string flag_for(const std::string& prefix, const std::string& key) {
  std::string name = prefix + key;
  std::replace(name.begin(), name.end(), '_', '-');
  std::replace(name.begin(), name.end(), '.', '-');
  return "--" + name;
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    T out{};
    if constexpr (std::is_floating_point_v<T>) {
      out = static_cast<T>(std::stod(value, &used));
    } else if constexpr (std::is_signed_v<T>) {
      out = static_cast<T>(std::stoll(value, &used));
    } else {
      if (!value.empty() && value[0] == '-') throw std::invalid_argument(value);
      out = static_cast<T>(std::stoull(value, &used));
    }
    if (used != value.size()) throw std::invalid_argument(value);
    return out;
  } catch (const std::exception&) {
    throw ValidationError("bad value '" + value + "' for " + key);
  }
}

const std::vector<std::string> kDerivedModelKeys = {"vocab_size", "vocab_hash", "unit_begin", "num_units"};

}  // namespace

std::vector<std::pair<std::string, std::string>> read_key_values(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read config file " + path.string());
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ValidationError(path.string() + ":" + std::to_string(line_no) + ": expected key = value");
    }
    out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return out;
}

void Settings::add_flags(CLI::App& app, const std::string& prefix, const std::vector<std::string>& keys,
                         const std::string& group) {
  for (const auto& key : keys) {
    const std::string full = prefix + key;
    app.add_option_function<std::string>(
           flag_for(prefix, key),
           [this, full](const std::string& value) {
             if (!flags_.count(full)) flag_order_.push_back(full);
             flags_[full] = value;
           },
           "Override " + full)
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast)
        ->group(group);
  }
}

void Settings::add_config_option(CLI::App& app) {
  app.add_option_function<std::string>(
      "--config", [this](const std::string& p) { config_path_ = p; },
      "Config file of key = value lines; flags take precedence");
}

std::vector<std::pair<std::string, std::string>> Settings::resolved() const {
  std::vector<std::pair<std::string, std::string>> out;
  if (config_path_) out = read_key_values(*config_path_);
  for (const auto& key : flag_order_) out.emplace_back(key, flags_.at(key));
  return out;
}

std::vector<std::pair<std::string, std::string>> Settings::with_prefix(const std::string& prefix) const {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [key, value] : resolved()) {
    const bool dotted = key.find('.') != std::string::npos;
    if (prefix.empty() ? !dotted : key.rfind(prefix, 0) == 0) out.emplace_back(key.substr(prefix.size()), value);
  }
  return out;
}

bool Settings::any_with_prefix(const std::string& prefix) const { return !with_prefix(prefix).empty(); }

void Settings::check_prefixes(const std::vector<std::string>& prefixes) const {
  for (const auto& [key, value] : resolved()) {
    const auto dot = key.find('.');
    const std::string prefix = dot == std::string::npos ? "" : key.substr(0, dot + 1);
    if (std::find(prefixes.begin(), prefixes.end(), prefix) == prefixes.end()) {
      throw ValidationError("setting '" + key + "' does not apply to this command");
    }
  }
}

std::vector<std::string> training_keys() {
  std::vector<std::string> keys;
  const nlohmann::json defaults = training::TrainingConfig{};
  for (const auto& item : defaults.items()) {
    if (item.key() != "seed") keys.push_back(item.key());
  }
  return keys;
}

std::vector<std::string> model_keys() {
  std::vector<std::string> keys;
  const nlohmann::json defaults = model::ModelConfig{};
  for (const auto& item : defaults.items()) {
    if (std::find(kDerivedModelKeys.begin(), kDerivedModelKeys.end(), item.key()) == kDerivedModelKeys.end()) {
      keys.push_back(item.key());
    }
  }
  return keys;
}

std::vector<std::string> noise_keys() { return {"mask_ratio", "mean_span", "delete_ratio"}; }

std::vector<std::string> synth_keys() {
  return {"sample_rate", "frame_ms", "base_hz", "spacing_hz", "amplitude", "fade_ms", "num_units", "silence_power"};
}

std::vector<std::string> decode_keys() { return {"beam_size", "max_len_ratio", "max_len_offset", "length_penalty"}; }

std::vector<std::string> corpus_keys() {
  std::vector<std::string> keys;
  std::istringstream in(corpus::format_corpus_spec({}));
  std::string line;
  while (std::getline(in, line)) {
    const std::string key = trim(line.substr(0, line.find('=')));
    if (key != "seed") keys.push_back(key);
  }
  return keys;
}

void apply_training(training::TrainingConfig& c, const std::vector<std::pair<std::string, std::string>>& kv) {
  for (const auto& [key, value] : kv) training::set_field(c, key, value);
}

void apply_model(model::ModelConfig& c, const std::vector<std::pair<std::string, std::string>>& kv) {
  nlohmann::json j = c;
  for (const auto& [key, value] : kv) {
    const auto keys = model_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw ValidationError("unknown model setting '" + key + "'");
    }
    if (j[key].is_number_float()) {
      j[key] = parse_number<double>("model." + key, value);
    } else {
      j[key] = parse_number<std::size_t>("model." + key, value);
    }
  }
  j.get_to(c);
}

void apply_noise(training::NoiseConfig& c, const std::vector<std::pair<std::string, std::string>>& kv) {
  for (const auto& [key, value] : kv) {
    const double v = parse_number<double>("noise." + key, value);
    if (key == "mask_ratio") c.mask_ratio = v;
    else if (key == "mean_span") c.mean_span = v;
    else if (key == "delete_ratio") c.delete_ratio = v;
    else throw ValidationError("unknown noise setting '" + key + "'");
  }
  c.validate();
}

void apply_synth(synthesis::SynthConfig& c, const std::vector<std::pair<std::string, std::string>>& kv) {
  for (const auto& [key, value] : kv) {
    const std::string name = "synth." + key;
    if (key == "sample_rate") c.sample_rate = parse_number<int>(name, value);
    else if (key == "frame_ms") c.frame_ms = parse_number<double>(name, value);
    else if (key == "base_hz") c.base_hz = parse_number<double>(name, value);
    else if (key == "spacing_hz") c.spacing_hz = parse_number<double>(name, value);
    else if (key == "amplitude") c.amplitude = parse_number<double>(name, value);
    else if (key == "fade_ms") c.fade_ms = parse_number<double>(name, value);
    else if (key == "num_units") c.num_units = parse_number<std::size_t>(name, value);
    else if (key == "silence_power") c.silence_power = parse_number<double>(name, value);
    else throw ValidationError("unknown synth setting '" + key + "'");
  }
  c.validate();
}

void apply_decode(decoding::DecodeConfig& c, const std::vector<std::pair<std::string, std::string>>& kv) {
  for (const auto& [key, value] : kv) {
    const std::string name = "decode." + key;
    if (key == "beam_size") c.beam_size = parse_number<std::size_t>(name, value);
    else if (key == "max_len_ratio") c.max_len_ratio = parse_number<double>(name, value);
    else if (key == "max_len_offset") c.max_len_offset = parse_number<std::size_t>(name, value);
    else if (key == "length_penalty") c.length_penalty = parse_number<double>(name, value);
    else throw ValidationError("unknown decode setting '" + key + "'");
  }
  c.validate();
}

corpus::CorpusSpec corpus_spec(const std::vector<std::pair<std::string, std::string>>& kv) {
  std::string text;
  for (const auto& [key, value] : kv) text += key + " = " + value + "\n";
  return corpus::parse_corpus_spec(text);
}

nlohmann::json to_json(const training::NoiseConfig& c) {
  return {{"mask_ratio", c.mask_ratio}, {"mean_span", c.mean_span}, {"delete_ratio", c.delete_ratio}};
}

nlohmann::json to_json(const synthesis::SynthConfig& c) {
  return {{"sample_rate", c.sample_rate}, {"frame_ms", c.frame_ms},   {"base_hz", c.base_hz},
          {"spacing_hz", c.spacing_hz},   {"amplitude", c.amplitude}, {"fade_ms", c.fade_ms},
          {"num_units", c.num_units},     {"silence_power", c.silence_power}};
}

nlohmann::json to_json(const decoding::DecodeConfig& c) {
  return {{"beam_size", c.beam_size},
          {"max_len_ratio", c.max_len_ratio},
          {"max_len_offset", c.max_len_offset},
          {"length_penalty", c.length_penalty}};
}

void write_run_json(const std::filesystem::path& dir, const nlohmann::json& run) {
  std::filesystem::create_directories(dir);
  std::ofstream out(dir / "run.json", std::ios::binary);
  out << run.dump(2) << '\n';
  if (!out) throw ValidationError("cannot write " + (dir / "run.json").string());
}

}  // namespace unitrans::cli
