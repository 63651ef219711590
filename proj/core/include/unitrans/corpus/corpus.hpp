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
#include <map>
#include <string>
#include <vector>

#include "unitrans/corpus/lexicon.hpp"
#include "unitrans/corpus/vocabulary.hpp"
#include "unitrans/units/unit_sequence.hpp"

namespace unitrans::corpus {

enum class Tier { kHigh, kMedium, kLow };

const char* tier_name(Tier tier);
Tier parse_tier(const std::string& name);

/// How a source language reorders the target sentence.
enum class WordOrder { kIdentity, kReverse, kSwapPairs, kRotateLeft };

const char* word_order_name(WordOrder order);
WordOrder parse_word_order(const std::string& name);
std::vector<std::string> apply_word_order(WordOrder order, const std::vector<std::string>& words);

struct LanguageSpec {
  std::string tag;
  Tier tier = Tier::kHigh;
  bool operator==(const LanguageSpec&) const = default;
};

/// Generation parameters; serialized as a flat key = value file.
struct CorpusSpec {
  std::vector<LanguageSpec> languages = {
      {"hi", Tier::kHigh}, {"md", Tier::kMedium}, {"lo", Tier::kLow}};
  std::size_t high_size = 5000;
  std::size_t medium_size = 500;
  std::size_t low_size = 50;
  std::size_t dev_size = 200;
  std::size_t test_size = 200;
  /// Target-language word types.
  std::size_t vocab_size = 200;
  std::size_t min_sentence_len = 3;
  std::size_t max_sentence_len = 6;
  std::size_t num_units = 100;
  std::size_t min_word_units = 2;
  std::size_t max_word_units = 5;
  /// Word frequencies follow rank^-zipf_exponent.
  double zipf_exponent = 1.0;
  std::uint64_t seed = 0;

  std::size_t tier_size(Tier tier) const;
  bool operator==(const CorpusSpec&) const = default;
};

std::string format_corpus_spec(const CorpusSpec& spec);
/// Parses `key = value` lines; '#' starts a comment. Unknown keys are errors.
CorpusSpec parse_corpus_spec(const std::string& text);

/// (x_S, u_L) pair plus the known target sentence for scoring.
struct ParallelExample {
  std::string id;
  std::string source_lang;
  std::vector<std::string> source_text;
  units::UnitSequence target_units;
  std::vector<std::string> target_text;
  bool operator==(const ParallelExample&) const = default;
};

struct LanguageInfo {
  std::string tag;
  Tier tier = Tier::kHigh;
  WordOrder order = WordOrder::kIdentity;
  /// Target word -> source word.
  std::map<std::string, std::string> substitution;
  bool operator==(const LanguageInfo&) const = default;
};

struct CorpusBundle {
  CorpusSpec spec;
  std::vector<LanguageInfo> languages;
  std::vector<ParallelExample> train;
  std::vector<ParallelExample> dev;
  std::vector<ParallelExample> test;
  Lexicon lexicon;
  Vocabulary vocab;

  const LanguageInfo& language(const std::string& tag) const;
  std::map<std::string, Tier> tier_map() const;
  bool operator==(const CorpusBundle& other) const;
};

/// Deterministic in spec.seed. Throws ValidationError when the lexicon
/// constraints cannot be met or a CorpusSpec field is out of range.
CorpusBundle generate_corpus(const CorpusSpec& spec);

std::vector<ParallelExample> filter_language(const std::vector<ParallelExample>& examples,
                                             const std::string& lang);

/// Writes corpus.cfg, languages.tsv, lexicon.tsv, vocab.txt and per-split
/// manifests plus reference TSVs into `dir`.
void save_corpus(const CorpusBundle& bundle, const std::filesystem::path& dir);
CorpusBundle load_corpus(const std::filesystem::path& dir);

}  // namespace unitrans::corpus
