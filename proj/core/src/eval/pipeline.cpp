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

#include "unitrans/eval/pipeline.hpp"

#include <algorithm>
#include <fstream>

#include "unitrans/common/error.hpp"
#include "unitrans/corpus/manifest.hpp"
#include "unitrans/synthesis/wav.hpp"

namespace unitrans::eval {

ModelUnits::ModelUnits(const model::TranslationModel<float>& model, const corpus::Vocabulary& vocab,
                       decoding::DecodeConfig config)
    : model_(model), vocab_(vocab), config_(config) {
  if (model.config().vocab_hash != vocab.hash()) {
    throw ValidationError("vocab hash mismatch: model has " + std::to_string(model.config().vocab_hash) +
                          ", corpus has " + std::to_string(vocab.hash()));
  }
}

units::UnitSequence ModelUnits::units_for(const corpus::ParallelExample& example) {
  return decoding::beam_decode(model_, vocab_.tokenize(example.source_text, example.source_lang), config_)
      .units;
}

OracleRecognizer::OracleRecognizer(const corpus::Lexicon& lexicon, const synthesis::SynthConfig& config)
    : lexicon_(lexicon), analyzer_(config) {}

std::vector<std::string> OracleRecognizer::transcribe(const Waveform& waveform) {
  return synthesis::units_to_text(analyzer_(waveform), lexicon_);
}

PipelineResult asr_bleu_pipeline(const std::vector<corpus::ParallelExample>& examples,
                                 UnitSource& units, Recognizer& recognizer,
                                 const std::map<std::string, corpus::Tier>& tiers,
                                 const PipelineOptions& options) {
  if (examples.empty()) throw ValidationError("pipeline: no examples");
  if (options.wav_dir) std::filesystem::create_directories(*options.wav_dir);
  PipelineResult result;
  std::vector<const corpus::ParallelExample*> order;
  for (const auto& ex : examples) order.push_back(&ex);
  std::sort(order.begin(), order.end(), [](const auto* a, const auto* b) { return a->id < b->id; });
  for (const auto* ex : order) {
    ExampleOutcome o;
    o.id = ex->id;
    o.lang = ex->source_lang;
    o.reference = ex->target_text;
    try {
      o.units = units.units_for(*ex);
      const Waveform wav = synthesis::synthesize(o.units, options.synth);
      if (options.wav_dir) synthesis::write_wav(*options.wav_dir / (ex->id + ".wav"), wav);
      o.hypothesis = recognizer.transcribe(wav);
    } catch (const NumericError& e) {
      throw NumericError("example " + ex->id + ": " + e.what());
    } catch (const Error& e) {
      throw ValidationError("example " + ex->id + ": " + e.what());
    }
    result.examples.push_back(std::move(o));
  }
  std::map<std::string, std::pair<std::vector<std::vector<std::string>>, std::vector<std::vector<std::string>>>>
      by_lang;
  for (const auto& o : result.examples) {
    by_lang[o.lang].first.push_back(o.hypothesis);
    by_lang[o.lang].second.push_back(o.reference);
  }
  std::map<std::string, LanguageResult> langs;
  for (const auto& [lang, pr] : by_lang) {
    langs[lang] = LanguageResult{bleu_tokens(pr.first, pr.second), pr.first.size()};
  }
  result.report = make_report(std::move(langs), tiers);
  return result;
}

void write_pipeline_outputs(const PipelineResult& result, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "report.json");
    out << report_json(result.report).dump(2) << '\n';
    if (!out) throw ValidationError("cannot write " + (dir / "report.json").string());
  }
  {
    std::ofstream out(dir / "report.txt");
    out << report_text(result.report);
  }
  std::ofstream out(dir / "examples.tsv");
  out << "id\thyp\tref\n";
  for (const auto& o : result.examples) {
    out << o.id << '\t' << corpus::join_words(o.hypothesis) << '\t' << corpus::join_words(o.reference) << '\n';
  }
  if (!out) throw ValidationError("cannot write " + (dir / "examples.tsv").string());
}

}  // namespace unitrans::eval
