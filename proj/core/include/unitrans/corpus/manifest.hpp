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
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "unitrans/corpus/corpus.hpp"

namespace unitrans::corpus {

/// UTF-8, LF, `id<TAB>src_lang<TAB>src_text<TAB>units`; units are space-
/// separated decimal IDs.
void write_manifest(const std::vector<ParallelExample>& examples, const std::filesystem::path& path);

/// Units come back with collapsed = false; callers validate. Rejects
/// malformed lines and unit IDs outside [0, num_units) naming the line.
std::vector<ParallelExample> read_manifest(const std::filesystem::path& path, std::size_t num_units);

/// `id<TAB>target text`.
void write_references(const std::vector<ParallelExample>& examples, const std::filesystem::path& path);
std::map<std::string, std::vector<std::string>> read_references(const std::filesystem::path& path);

std::vector<std::string> split_words(const std::string& text);
std::string join_words(const std::vector<std::string>& words);

}  // namespace unitrans::corpus
