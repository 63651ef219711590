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

#include "unitrans/corpus/vocabulary.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include "unitrans/common/error.hpp"
#include "unitrans/common/random.hpp"

namespace unitrans::corpus {

std::string lang_tag_token(const std::string& lang) { return "__" + lang + "__"; }

std::string unit_token_string(units::UnitId unit) { return "<u" + std::to_string(unit) + ">"; }

std::string lowercase(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

Vocabulary::Vocabulary(std::vector<std::string> languages, std::vector<std::string> text_tokens,
                       std::size_t num_units)
    : languages_(std::move(languages)), num_units_(num_units) {
  tokens_ = {"<pad>", "<s>", "</s>", "<mask>", "<unk>"};
  for (const auto& lang : languages_) tokens_.push_back(lang_tag_token(lang));
  for (auto& t : text_tokens) tokens_.push_back(lowercase(std::move(t)));
  for (std::size_t u = 0; u < num_units_; ++u) {
    tokens_.push_back(unit_token_string(static_cast<units::UnitId>(u)));
  }
  index();
}

void Vocabulary::index() {
  lookup_.clear();
  hash_ = 0xcbf29ce484222325ULL;
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (!lookup_.emplace(tokens_[i], static_cast<TokenId>(i)).second) {
      throw ValidationError("duplicate vocabulary token '" + tokens_[i] + "'");
    }
    hash_ = fnv1a(tokens_[i], hash_);
    hash_ = fnv1a(std::string_view("\n", 1), hash_);
  }
}

bool Vocabulary::has_language(const std::string& lang) const {
  return std::find(languages_.begin(), languages_.end(), lang) != languages_.end();
}

TokenId Vocabulary::lang_tag(const std::string& lang) const {
  const auto it = std::find(languages_.begin(), languages_.end(), lang);
  if (it == languages_.end()) throw ValidationError("language '" + lang + "' not in vocabulary");
  return lang_begin() + static_cast<TokenId>(it - languages_.begin());
}

std::optional<TokenId> Vocabulary::find(const std::string& token) const {
  const auto it = lookup_.find(token);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

TokenId Vocabulary::unit_token(units::UnitId unit) const {
  if (unit < 0 || static_cast<std::size_t>(unit) >= num_units_) {
    throw ValidationError("unit " + std::to_string(unit) + " outside vocabulary unit range");
  }
  return unit_begin() + unit;
}

units::UnitId Vocabulary::unit_of(TokenId id) const {
  if (!is_unit(id)) throw ValidationError("token " + std::to_string(id) + " is not a unit token");
  return id - unit_begin();
}

std::vector<TokenId> Vocabulary::tokenize(const std::vector<std::string>& words,
                                          const std::string& lang) const {
  std::vector<TokenId> out;
  out.reserve(words.size() + 2);
  out.push_back(lang_tag(lang));
  for (const auto& w : words) {
    const auto id = find(lowercase(w));
    out.push_back(id && is_text(*id) ? *id : kUnk);
  }
  out.push_back(kEos);
  return out;
}

void Vocabulary::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path.string());
  out << "#languages";
  for (const auto& l : languages_) out << ' ' << l;
  out << "\n#units " << num_units_ << "\n";
  for (const auto& t : tokens_) out << t << "\n";
}

Vocabulary Vocabulary::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open vocabulary " + path.string());
  Vocabulary v;
  std::string line;
  if (!std::getline(in, line) || line.rfind("#languages", 0) != 0) {
    throw ValidationError(path.string() + ": missing #languages header");
  }
  {
    std::size_t pos = std::string("#languages").size();
    while (pos < line.size()) {
      while (pos < line.size() && line[pos] == ' ') ++pos;
      const auto end = line.find(' ', pos);
      const auto word = line.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
      if (!word.empty()) v.languages_.push_back(word);
      if (end == std::string::npos) break;
      pos = end;
    }
  }
  if (!std::getline(in, line) || line.rfind("#units ", 0) != 0) {
    throw ValidationError(path.string() + ": missing #units header");
  }
  v.num_units_ = std::stoull(line.substr(7));
  while (std::getline(in, line)) v.tokens_.push_back(line);
  if (v.tokens_.size() < kNumSpecials + v.languages_.size() + v.num_units_) {
    throw ValidationError(path.string() + ": truncated vocabulary");
  }
  v.index();
  return v;
}

}  // namespace unitrans::corpus
