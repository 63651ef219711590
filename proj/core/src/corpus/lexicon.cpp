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

#include "unitrans/corpus/lexicon.hpp"

#include <charconv>
#include <fstream>

#include "unitrans/common/error.hpp"

namespace unitrans::corpus {

std::string join_units(const std::vector<units::UnitId>& units) {
  std::string out;
  for (std::size_t i = 0; i < units.size(); ++i) {
    if (i > 0) out += ' ';
    out += std::to_string(units[i]);
  }
  return out;
}

std::vector<units::UnitId> parse_units(const std::string& field) {
  std::vector<units::UnitId> out;
  const char* p = field.data();
  const char* end = p + field.size();
  while (p < end) {
    while (p < end && *p == ' ') ++p;
    if (p == end) break;
    units::UnitId v = 0;
    const auto [next, ec] = std::from_chars(p, end, v);
    if (ec != std::errc() || (next < end && *next != ' ')) {
      throw ValidationError("malformed unit field '" + field + "'");
    }
    out.push_back(v);
    p = next;
  }
  return out;
}

void Lexicon::add(const std::string& word, std::vector<units::UnitId> units) {
  if (word.empty()) throw ValidationError("lexicon: empty word");
  if (units.empty()) throw ValidationError("lexicon: empty unit string for '" + word + "'");
  for (auto u : units) {
    if (u == kSeparator) throw ValidationError("lexicon: '" + word + "' uses the separator unit");
    if (u < 0) throw ValidationError("lexicon: negative unit in '" + word + "'");
  }
  if (units::has_adjacent_repeats(units)) {
    throw ValidationError("lexicon: '" + word + "' has adjacent repeated units");
  }
  if (forward_.count(word)) throw ValidationError("lexicon: duplicate word '" + word + "'");
  if (inverse_.count(units)) {
    throw ValidationError("lexicon: unit string of '" + word + "' already used by '" +
                          inverse_.at(units) + "'");
  }
  inverse_.emplace(units, word);
  forward_.emplace(word, std::move(units));
}

const std::vector<units::UnitId>* Lexicon::find(const std::string& word) const {
  const auto it = forward_.find(word);
  return it == forward_.end() ? nullptr : &it->second;
}

std::optional<std::string> Lexicon::word_for(const std::vector<units::UnitId>& units) const {
  const auto it = inverse_.find(units);
  if (it == inverse_.end()) return std::nullopt;
  return it->second;
}

units::UnitSequence Lexicon::encode(const std::vector<std::string>& words) const {
  units::UnitSequence out;
  out.collapsed = true;
  for (std::size_t i = 0; i < words.size(); ++i) {
    const auto* entry = find(words[i]);
    if (entry == nullptr) throw ValidationError("lexicon: unknown word '" + words[i] + "'");
    if (i > 0) out.units.push_back(kSeparator);
    out.units.insert(out.units.end(), entry->begin(), entry->end());
  }
  return out;
}

void Lexicon::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path.string());
  for (const auto& [word, units] : forward_) out << word << '\t' << join_units(units) << '\n';
}

Lexicon Lexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open lexicon " + path.string());
  Lexicon lex;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
      throw ValidationError(path.string() + ":" + std::to_string(line_no) +
                            ": expected 2 tab-separated columns");
    }
    try {
      lex.add(line.substr(0, tab), parse_units(line.substr(tab + 1)));
    } catch (const ValidationError& e) {
      throw ValidationError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return lex;
}

}  // namespace unitrans::corpus
