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
#include <string>
#include <vector>

#include "unitrans/units/unit_sequence.hpp"

namespace unitrans::corpus {

/// Target-language word -> unit string. Unit strings are non-empty, free of
/// adjacent repeats, never contain the separator, and are unique per word.
class Lexicon {
 public:
  static constexpr units::UnitId kSeparator = 0;

  void add(const std::string& word, std::vector<units::UnitId> units);

  std::size_t size() const { return forward_.size(); }
  const std::vector<units::UnitId>* find(const std::string& word) const;
  std::optional<std::string> word_for(const std::vector<units::UnitId>& units) const;

  /// Word strings joined by the separator unit; collapsed by construction.
  units::UnitSequence encode(const std::vector<std::string>& words) const;

  const std::map<std::string, std::vector<units::UnitId>>& entries() const { return forward_; }

  /// TSV `word<TAB>units`.
  void save(const std::filesystem::path& path) const;
  static Lexicon load(const std::filesystem::path& path);

  bool operator==(const Lexicon& other) const { return forward_ == other.forward_; }

 private:
  std::map<std::string, std::vector<units::UnitId>> forward_;
  std::map<std::vector<units::UnitId>, std::string> inverse_;
};

std::string join_units(const std::vector<units::UnitId>& units);
std::vector<units::UnitId> parse_units(const std::string& field);

}  // namespace unitrans::corpus
