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
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "unitrans/common/waveform.hpp"
#include "unitrans/corpus/corpus.hpp"
#include "unitrans/decoding/search.hpp"
#include "unitrans/eval/report.hpp"
#include "unitrans/synthesis/synthesizer.hpp"

namespace unitrans::eval {

/// Produces the unit sequence to be voiced for one example.
class UnitSource {
 public:
  virtual ~UnitSource() = default;
  virtual units::UnitSequence units_for(const corpus::ParallelExample& example) = 0;
};

/// Ground-truth target units; isolates the harness from the model.
class OracleUnits : public UnitSource {
 public:
  units::UnitSequence units_for(const corpus::ParallelExample& example) override {
    return example.target_units;
  }
};

/// Beam search with a trained model.
class ModelUnits : public UnitSource {
 public:
  ModelUnits(const model::TranslationModel<float>& model, const corpus::Vocabulary& vocab,
             decoding::DecodeConfig config);
  units::UnitSequence units_for(const corpus::ParallelExample& example) override;

 private:
  const model::TranslationModel<float>& model_;
  const corpus::Vocabulary& vocab_;
  decoding::DecodeConfig config_;
};

/// Speech -> words.
class Recognizer {
 public:
  virtual ~Recognizer() = default;
  virtual std::vector<std::string> transcribe(const Waveform& waveform) = 0;
};

/// Matched carrier analysis followed by lexicon inversion.
class OracleRecognizer : public Recognizer {
 public:
  OracleRecognizer(const corpus::Lexicon& lexicon, const synthesis::SynthConfig& config);
  std::vector<std::string> transcribe(const Waveform& waveform) override;

 private:
  const corpus::Lexicon& lexicon_;
  synthesis::Analyzer analyzer_;
};

struct ExampleOutcome {
  std::string id;
  std::string lang;
  units::UnitSequence units;
  std::vector<std::string> hypothesis;
  std::vector<std::string> reference;
};

struct PipelineResult {
  EvalReport report;
  /// In example-id order.
  std::vector<ExampleOutcome> examples;
};

struct PipelineOptions {
  synthesis::SynthConfig synth;
  /// When set, each example's waveform is written as <id>.wav here.
  std::optional<std::filesystem::path> wav_dir;
};

/// units -> synthesize -> transcribe -> corpus BLEU per language -> tiers.
/// Stage failures are rethrown with the example id attached.
PipelineResult asr_bleu_pipeline(const std::vector<corpus::ParallelExample>& examples,
                                 UnitSource& units, Recognizer& recognizer,
                                 const std::map<std::string, corpus::Tier>& tiers,
                                 const PipelineOptions& options = {});

/// report.json, report.txt and examples.tsv (id, hyp, ref) in `dir`.
void write_pipeline_outputs(const PipelineResult& result, const std::filesystem::path& dir);

}  // namespace unitrans::eval
