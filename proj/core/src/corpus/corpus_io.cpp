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

#include <fstream>
#include <sstream>

#include "unitrans/common/error.hpp"
#include "unitrans/corpus/corpus.hpp"
#include "unitrans/corpus/manifest.hpp"

namespace unitrans::corpus {

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void attach_references(std::vector<ParallelExample>& examples, const std::filesystem::path& path) {
  const auto refs = read_references(path);
  for (auto& ex : examples) {
    const auto it = refs.find(ex.id);
    if (it == refs.end()) throw ValidationError(path.string() + ": no reference for " + ex.id);
    ex.target_text = it->second;
    ex.target_units.collapsed = true;
    units::validate(ex.target_units, SIZE_MAX);
  }
}

}  // namespace

void save_corpus(const CorpusBundle& bundle, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "corpus.cfg", std::ios::binary);
    out << format_corpus_spec(bundle.spec);
  }
  {
    std::ofstream out(dir / "languages.tsv", std::ios::binary);
    for (const auto& l : bundle.languages) {
      out << l.tag << '\t' << tier_name(l.tier) << '\t' << word_order_name(l.order) << '\n';
    }
  }
  {
    std::ofstream out(dir / "substitutions.tsv", std::ios::binary);
    for (const auto& l : bundle.languages) {
      for (const auto& [target, source] : l.substitution) {
        out << l.tag << '\t' << target << '\t' << source << '\n';
      }
    }
  }
  bundle.lexicon.save(dir / "lexicon.tsv");
  bundle.vocab.save(dir / "vocab.txt");
  const std::pair<const char*, const std::vector<ParallelExample>*> splits[] = {
      {"train", &bundle.train}, {"dev", &bundle.dev}, {"test", &bundle.test}};
  for (const auto& [name, examples] : splits) {
    write_manifest(*examples, dir / (std::string(name) + ".tsv"));
    write_references(*examples, dir / (std::string(name) + ".ref.tsv"));
  }
}

CorpusBundle load_corpus(const std::filesystem::path& dir) {
  CorpusBundle bundle;
  bundle.spec = parse_corpus_spec(slurp(dir / "corpus.cfg"));
  {
    std::istringstream in(slurp(dir / "languages.tsv"));
    std::string tag, tier, order;
    while (in >> tag >> tier >> order) {
      LanguageInfo info;
      info.tag = tag;
      info.tier = parse_tier(tier);
      info.order = parse_word_order(order);
      bundle.languages.push_back(std::move(info));
    }
  }
  {
    std::istringstream in(slurp(dir / "substitutions.tsv"));
    std::string tag, target, source;
    while (in >> tag >> target >> source) {
      bool found = false;
      for (auto& l : bundle.languages) {
        if (l.tag == tag) {
          l.substitution[target] = source;
          found = true;
        }
      }
      if (!found) throw ValidationError("substitutions.tsv names unknown language " + tag);
    }
  }
  bundle.lexicon = Lexicon::load(dir / "lexicon.tsv");
  bundle.vocab = Vocabulary::load(dir / "vocab.txt");
  if (bundle.vocab.num_units() != bundle.spec.num_units) {
    throw ValidationError("vocab.txt unit count disagrees with corpus.cfg");
  }
  const std::pair<const char*, std::vector<ParallelExample>*> splits[] = {
      {"train", &bundle.train}, {"dev", &bundle.dev}, {"test", &bundle.test}};
  for (const auto& [name, examples] : splits) {
    *examples = read_manifest(dir / (std::string(name) + ".tsv"), bundle.spec.num_units);
    attach_references(*examples, dir / (std::string(name) + ".ref.tsv"));
  }
  return bundle;
}

}  // namespace unitrans::corpus
