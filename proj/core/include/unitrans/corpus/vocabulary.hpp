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
#include <filesystem>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "unitrans/units/unit_sequence.hpp"

namespace unitrans::corpus {

using TokenId = std::int32_t;

/// Joint text + unit vocabulary. ID ranges are contiguous and ordered:
/// specials < language tags < text tokens < unit tokens.
class Vocabulary {
 public:
  static constexpr TokenId kPad = 0;
  static constexpr TokenId kBos = 1;
  static constexpr TokenId kEos = 2;
  static constexpr TokenId kMask = 3;
  static constexpr TokenId kUnk = 4;
  static constexpr std::size_t kNumSpecials = 5;

  Vocabulary() = default;
  Vocabulary(std::vector<std::string> languages, std::vector<std::string> text_tokens,
             std::size_t num_units);

  std::size_t size() const { return tokens_.size(); }
  std::size_t num_units() const { return num_units_; }
  const std::vector<std::string>& languages() const { return languages_; }

  TokenId lang_begin() const { return static_cast<TokenId>(kNumSpecials); }
  TokenId text_begin() const { return lang_begin() + static_cast<TokenId>(languages_.size()); }
  TokenId unit_begin() const { return static_cast<TokenId>(tokens_.size() - num_units_); }

  bool has_language(const std::string& lang) const;
  TokenId lang_tag(const std::string& lang) const;
  std::optional<TokenId> find(const std::string& token) const;
  const std::string& token(TokenId id) const { return tokens_.at(static_cast<std::size_t>(id)); }

  bool is_unit(TokenId id) const { return id >= unit_begin() && id < static_cast<TokenId>(size()); }
  bool is_text(TokenId id) const { return id >= text_begin() && id < unit_begin(); }
  TokenId unit_token(units::UnitId unit) const;
  units::UnitId unit_of(TokenId id) const;

  /// [lang tag] + word tokens + [eos]; unknown words map to unk.
  std::vector<TokenId> tokenize(const std::vector<std::string>& words, const std::string& lang) const;

  /// FNV-1a over every token string in ID order.
  std::uint64_t hash() const { return hash_; }

  /// One token per line, preceded by a header line with the unit count.
  void save(const std::filesystem::path& path) const;
  static Vocabulary load(const std::filesystem::path& path);

 private:
  void index();

  std::vector<std::string> languages_;
  std::vector<std::string> tokens_;
  std::size_t num_units_ = 0;
  std::unordered_map<std::string, TokenId> lookup_;
  std::uint64_t hash_ = 0;
};

std::string lang_tag_token(const std::string& lang);
std::string unit_token_string(units::UnitId unit);
std::string lowercase(std::string s);

}  // namespace unitrans::corpus
