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

#include "unitrans/corpus/manifest.hpp"

#include <fstream>
#include <sstream>

#include "unitrans/common/error.hpp"

namespace unitrans::corpus {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> cols;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    cols.push_back(line.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return cols;
}

}  // namespace

std::vector<std::string> split_words(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

std::string join_words(const std::vector<std::string>& words) {
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i > 0) out += ' ';
    out += words[i];
  }
  return out;
}

void write_manifest(const std::vector<ParallelExample>& examples, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write manifest " + path.string());
  for (const auto& ex : examples) {
    if (ex.source_text.empty()) throw ValidationError("manifest: example " + ex.id + " has empty source");
    out << ex.id << '\t' << ex.source_lang << '\t' << join_words(ex.source_text) << '\t'
        << join_units(ex.target_units.units) << '\n';
  }
}

std::vector<ParallelExample> read_manifest(const std::filesystem::path& path, std::size_t num_units) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open manifest " + path.string());
  std::vector<ParallelExample> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string where = path.string() + ":" + std::to_string(line_no);
    if (!line.empty() && line.back() == '\r') throw ValidationError(where + ": CRLF line ending");
    if (line.empty()) continue;
    const auto cols = split_tabs(line);
    if (cols.size() != 4) {
      throw ValidationError(where + ": expected 4 tab-separated columns, found " +
                            std::to_string(cols.size()));
    }
    ParallelExample ex;
    ex.id = cols[0];
    ex.source_lang = cols[1];
    ex.source_text = split_words(cols[2]);
    if (ex.id.empty() || ex.source_lang.empty() || ex.source_text.empty()) {
      throw ValidationError(where + ": empty id, language, or source text");
    }
    try {
      ex.target_units.units = parse_units(cols[3]);
    } catch (const ValidationError& e) {
      throw ValidationError(where + ": " + e.what());
    }
    ex.target_units.collapsed = false;
    for (auto u : ex.target_units.units) {
      if (u < 0 || static_cast<std::size_t>(u) >= num_units) {
        throw ValidationError(where + ": unit " + std::to_string(u) + " outside [0, " +
                              std::to_string(num_units) + ")");
      }
    }
    out.push_back(std::move(ex));
  }
  return out;
}

void write_references(const std::vector<ParallelExample>& examples, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write references " + path.string());
  for (const auto& ex : examples) out << ex.id << '\t' << join_words(ex.target_text) << '\n';
}

std::map<std::string, std::vector<std::string>> read_references(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open references " + path.string());
  std::map<std::string, std::vector<std::string>> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto cols = split_tabs(line);
    if (cols.size() != 2) {
      throw ValidationError(path.string() + ":" + std::to_string(line_no) +
                            ": expected 2 tab-separated columns");
    }
    out[cols[0]] = split_words(cols[1]);
  }
  return out;
}

}  // namespace unitrans::corpus
