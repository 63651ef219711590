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

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "unitrans/common/error.hpp"
#include "unitrans/common/random.hpp"
#include "unitrans/corpus/corpus.hpp"

namespace unitrans::corpus {

namespace {

constexpr const char* kConsonants = "bdfgklmnprstvz";
constexpr const char* kVowels = "aeiou";

std::string make_word(Rng& rng, std::size_t syllables) {
  std::string w;
  for (std::size_t i = 0; i < syllables; ++i) {
    w += kConsonants[rng.below(14)];
    w += kVowels[rng.below(5)];
  }
  return w;
}

std::string unique_word(Rng& rng, std::set<std::string>& used, std::size_t min_syl,
                        std::size_t max_syl) {
  for (int attempt = 0; attempt < 100000; ++attempt) {
    const std::size_t syl = min_syl + rng.below(max_syl - min_syl + 1);
    std::string w = make_word(rng, syl);
    if (used.insert(w).second) return w;
  }
  throw ValidationError("corpus: could not generate enough distinct words");
}

long double lexicon_capacity(const CorpusSpec& spec) {
  const long double choices = static_cast<long double>(spec.num_units) - 1.0L;
  long double total = 0.0L;
  for (std::size_t len = spec.min_word_units; len <= spec.max_word_units; ++len) {
    total += choices * std::pow(choices - 1.0L, static_cast<long double>(len - 1));
  }
  return total;
}

void check_spec(const CorpusSpec& spec) {
  if (spec.languages.empty()) throw ValidationError("corpus: at least one source language required");
  std::set<std::string> tags;
  for (const auto& l : spec.languages) {
    if (l.tag.empty() || l.tag.find_first_of(" \t\n:,") != std::string::npos) {
      throw ValidationError("corpus: invalid language tag '" + l.tag + "'");
    }
    if (!tags.insert(l.tag).second) throw ValidationError("corpus: duplicate language " + l.tag);
  }
  if (spec.vocab_size < 10) throw ValidationError("corpus: vocab_size must be at least 10");
  if (spec.high_size < 1 || spec.medium_size < 1 || spec.low_size < 1) {
    throw ValidationError("corpus: tier sizes must be at least 1");
  }
  if (spec.min_sentence_len < 1 || spec.min_sentence_len > spec.max_sentence_len) {
    throw ValidationError("corpus: invalid sentence length range");
  }
  if (spec.min_word_units < 1 || spec.min_word_units > spec.max_word_units) {
    throw ValidationError("corpus: invalid word unit length range");
  }
  if (spec.num_units < 2 || (spec.max_word_units > 1 && spec.num_units < 3)) {
    throw ValidationError("corpus: unit space too small for collapse-safe word strings");
  }
  if (!(spec.zipf_exponent >= 0.0)) throw ValidationError("corpus: zipf_exponent must be >= 0");
  const long double capacity = lexicon_capacity(spec);
  if (capacity < static_cast<long double>(spec.vocab_size) * 2.0L) {
    std::ostringstream msg;
    msg << "corpus: lexicon constraints unsatisfiable: " << spec.vocab_size
        << " words need distinct unit strings but only " << static_cast<double>(capacity)
        << " exist (units=" << spec.num_units << ")";
    throw ValidationError(msg.str());
  }
}

}  // namespace

const char* tier_name(Tier tier) {
  switch (tier) {
    case Tier::kHigh: return "high";
    case Tier::kMedium: return "medium";
    case Tier::kLow: return "low";
  }
  return "high";
}

Tier parse_tier(const std::string& name) {
  if (name == "high") return Tier::kHigh;
  if (name == "medium") return Tier::kMedium;
  if (name == "low") return Tier::kLow;
  throw ValidationError("unknown resource tier '" + name + "'");
}

const char* word_order_name(WordOrder order) {
  switch (order) {
    case WordOrder::kIdentity: return "identity";
    case WordOrder::kReverse: return "reverse";
    case WordOrder::kSwapPairs: return "swap_pairs";
    case WordOrder::kRotateLeft: return "rotate_left";
  }
  return "identity";
}

WordOrder parse_word_order(const std::string& name) {
  if (name == "identity") return WordOrder::kIdentity;
  if (name == "reverse") return WordOrder::kReverse;
  if (name == "swap_pairs") return WordOrder::kSwapPairs;
  if (name == "rotate_left") return WordOrder::kRotateLeft;
  throw ValidationError("unknown word order '" + name + "'");
}

std::vector<std::string> apply_word_order(WordOrder order, const std::vector<std::string>& words) {
  std::vector<std::string> out = words;
  switch (order) {
    case WordOrder::kIdentity:
      break;
    case WordOrder::kReverse:
      std::reverse(out.begin(), out.end());
      break;
    case WordOrder::kSwapPairs:
      for (std::size_t i = 0; i + 1 < out.size(); i += 2) std::swap(out[i], out[i + 1]);
      break;
    case WordOrder::kRotateLeft:
      if (!out.empty()) std::rotate(out.begin(), out.begin() + 1, out.end());
      break;
  }
  return out;
}

std::size_t CorpusSpec::tier_size(Tier tier) const {
  switch (tier) {
    case Tier::kHigh: return high_size;
    case Tier::kMedium: return medium_size;
    case Tier::kLow: return low_size;
  }
  return high_size;
}

const LanguageInfo& CorpusBundle::language(const std::string& tag) const {
  for (const auto& l : languages) {
    if (l.tag == tag) return l;
  }
  throw ValidationError("corpus has no language '" + tag + "'");
}

std::map<std::string, Tier> CorpusBundle::tier_map() const {
  std::map<std::string, Tier> out;
  for (const auto& l : languages) out[l.tag] = l.tier;
  return out;
}

bool CorpusBundle::operator==(const CorpusBundle& other) const {
  return spec == other.spec && languages == other.languages && train == other.train &&
         dev == other.dev && test == other.test && lexicon == other.lexicon &&
         vocab.hash() == other.vocab.hash();
}

CorpusBundle generate_corpus(const CorpusSpec& spec) {
  check_spec(spec);
  CorpusBundle bundle;
  bundle.spec = spec;

  // Target words and their unit strings.
  std::set<std::string> used_words;
  Rng word_rng(derive_seed(spec.seed, "corpus/target-words"));
  std::vector<std::string> target_words;
  for (std::size_t i = 0; i < spec.vocab_size; ++i) {
    target_words.push_back(unique_word(word_rng, used_words, 2, 3));
  }
  Rng unit_rng(derive_seed(spec.seed, "corpus/lexicon"));
  const std::size_t choices = spec.num_units - 1;  // unit 0 is the separator
  for (const auto& w : target_words) {
    for (int attempt = 0;; ++attempt) {
      if (attempt > 10000) throw ValidationError("corpus: lexicon constraints unsatisfiable");
      const std::size_t len =
          spec.min_word_units + unit_rng.below(spec.max_word_units - spec.min_word_units + 1);
      std::vector<units::UnitId> units;
      units.push_back(static_cast<units::UnitId>(1 + unit_rng.below(choices)));
      while (units.size() < len) {
        auto u = static_cast<units::UnitId>(1 + unit_rng.below(choices - 1));
        if (u >= units.back()) ++u;
        units.push_back(u);
      }
      if (!bundle.lexicon.word_for(units)) {
        bundle.lexicon.add(w, std::move(units));
        break;
      }
    }
  }

  // Zipfian word distribution over generation rank.
  std::vector<double> cdf(spec.vocab_size);
  double total = 0.0;
  for (std::size_t r = 0; r < spec.vocab_size; ++r) {
    total += 1.0 / std::pow(static_cast<double>(r + 1), spec.zipf_exponent);
    cdf[r] = total;
  }
  for (double& c : cdf) c /= total;

  std::vector<std::string> text_tokens;
  for (const auto& lspec : spec.languages) {
    LanguageInfo info;
    info.tag = lspec.tag;
    info.tier = lspec.tier;
    info.order = static_cast<WordOrder>(derive_seed(spec.seed, "corpus/order/" + lspec.tag) % 4);
    Rng sub_rng(derive_seed(spec.seed, "corpus/substitution/" + lspec.tag));
    std::vector<std::string> sorted_words;
    for (const auto& w : target_words) {
      std::string s = unique_word(sub_rng, used_words, 2, 4);
      info.substitution.emplace(w, s);
      sorted_words.push_back(std::move(s));
    }
    std::sort(sorted_words.begin(), sorted_words.end());
    text_tokens.insert(text_tokens.end(), sorted_words.begin(), sorted_words.end());

    Rng sent_rng(derive_seed(spec.seed, "corpus/sentences/" + lspec.tag));
    auto make_example = [&](const std::string& split, std::size_t index) {
      ParallelExample ex;
      char buf[16];
      std::snprintf(buf, sizeof(buf), "%05zu", index);
      ex.id = lspec.tag + "-" + split + "-" + buf;
      ex.source_lang = lspec.tag;
      const std::size_t len =
          spec.min_sentence_len + sent_rng.below(spec.max_sentence_len - spec.min_sentence_len + 1);
      for (std::size_t i = 0; i < len; ++i) {
        const double u = sent_rng.uniform();
        const auto rank = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
        ex.target_text.push_back(target_words[std::min(rank, spec.vocab_size - 1)]);
      }
      ex.target_units = bundle.lexicon.encode(ex.target_text);
      std::vector<std::string> substituted;
      for (const auto& w : ex.target_text) substituted.push_back(info.substitution.at(w));
      ex.source_text = apply_word_order(info.order, substituted);
      return ex;
    };
    const std::size_t n_train = spec.tier_size(lspec.tier);
    for (std::size_t i = 0; i < n_train; ++i) bundle.train.push_back(make_example("train", i));
    for (std::size_t i = 0; i < spec.dev_size; ++i) bundle.dev.push_back(make_example("dev", i));
    for (std::size_t i = 0; i < spec.test_size; ++i) bundle.test.push_back(make_example("test", i));
    bundle.languages.push_back(std::move(info));
  }

  std::vector<std::string> tags;
  for (const auto& l : spec.languages) tags.push_back(l.tag);
  bundle.vocab = Vocabulary(std::move(tags), std::move(text_tokens), spec.num_units);
  return bundle;
}

std::vector<ParallelExample> filter_language(const std::vector<ParallelExample>& examples,
                                             const std::string& lang) {
  std::vector<ParallelExample> out;
  for (const auto& ex : examples) {
    if (ex.source_lang == lang) out.push_back(ex);
  }
  return out;
}

std::string format_corpus_spec(const CorpusSpec& spec) {
  std::ostringstream out;
  out.precision(17);
  out << "languages = ";
  for (std::size_t i = 0; i < spec.languages.size(); ++i) {
    if (i > 0) out << ',';
    out << spec.languages[i].tag << ':' << tier_name(spec.languages[i].tier);
  }
  out << "\nhigh_size = " << spec.high_size << "\nmedium_size = " << spec.medium_size
      << "\nlow_size = " << spec.low_size << "\ndev_size = " << spec.dev_size
      << "\ntest_size = " << spec.test_size << "\nvocab_size = " << spec.vocab_size
      << "\nmin_sentence_len = " << spec.min_sentence_len
      << "\nmax_sentence_len = " << spec.max_sentence_len << "\nnum_units = " << spec.num_units
      << "\nmin_word_units = " << spec.min_word_units
      << "\nmax_word_units = " << spec.max_word_units << "\nzipf_exponent = " << spec.zipf_exponent
      << "\nseed = " << spec.seed << "\n";
  return out.str();
}

CorpusSpec parse_corpus_spec(const std::string& text) {
  CorpusSpec spec;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ValidationError("corpus spec line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "languages") {
        spec.languages.clear();
        std::istringstream items(value);
        std::string item;
        while (std::getline(items, item, ',')) {
          item = trim(item);
          const auto colon = item.find(':');
          if (colon == std::string::npos) throw ValidationError("language entry needs tag:tier");
          spec.languages.push_back({trim(item.substr(0, colon)), parse_tier(trim(item.substr(colon + 1)))});
        }
      } else if (key == "high_size") spec.high_size = std::stoull(value);
      else if (key == "medium_size") spec.medium_size = std::stoull(value);
      else if (key == "low_size") spec.low_size = std::stoull(value);
      else if (key == "dev_size") spec.dev_size = std::stoull(value);
      else if (key == "test_size") spec.test_size = std::stoull(value);
      else if (key == "vocab_size") spec.vocab_size = std::stoull(value);
      else if (key == "min_sentence_len") spec.min_sentence_len = std::stoull(value);
      else if (key == "max_sentence_len") spec.max_sentence_len = std::stoull(value);
      else if (key == "num_units") spec.num_units = std::stoull(value);
      else if (key == "min_word_units") spec.min_word_units = std::stoull(value);
      else if (key == "max_word_units") spec.max_word_units = std::stoull(value);
      else if (key == "zipf_exponent") spec.zipf_exponent = std::stod(value);
      else if (key == "seed") spec.seed = std::stoull(value);
      else throw ValidationError("unknown key '" + key + "'");
    } catch (const ValidationError& e) {
      throw ValidationError("corpus spec line " + std::to_string(line_no) + ": " + e.what());
    } catch (const std::exception&) {
      throw ValidationError("corpus spec line " + std::to_string(line_no) + ": bad value for " + key);
    }
  }
  return spec;
}

}  // namespace unitrans::corpus
