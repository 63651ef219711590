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
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "unitrans/corpus/batching.hpp"
#include "unitrans/corpus/corpus.hpp"
#include "unitrans/model/transformer.hpp"
#include "unitrans/training/adam.hpp"
#include "unitrans/training/loss.hpp"
#include "unitrans/training/noise.hpp"
#include "unitrans/training/schedule.hpp"

namespace unitrans::training {

using corpus::SequencePair;
using model::TranslationModel;

struct StepRecord {
  std::size_t step = 0;
  double loss = 0.0;
  double lr = 0.0;
  double token_accuracy = 0.0;
  double wall_ms = 0.0;
};

struct DevRecord {
  std::size_t step = 0;
  double loss = 0.0;
};

/// Training pairs for a given epoch; lets denoising redraw its noise.
using PairSource = std::function<const std::vector<SequencePair>&(std::uint64_t epoch)>;

struct TrainOptions {
  /// JSON lines: step, loss, lr, token_accuracy, wall_ms (and dev_loss on
  /// evaluation steps).
  std::ostream* metrics = nullptr;
  /// Receives ckpt-<step>.bin every checkpoint_every steps and final.bin.
  std::optional<std::filesystem::path> checkpoint_dir;
  /// Stops after the first dev evaluation at or below this loss.
  std::optional<double> stop_dev_loss;
  std::function<void(const StepRecord&)> on_step;
};

struct TrainResult {
  TranslationModel<float> model;
  AdamState<float> optimizer;
  std::size_t steps = 0;
  std::vector<StepRecord> log;
  std::vector<DevRecord> dev;

  /// First evaluated step with dev loss <= threshold.
  std::optional<std::size_t> first_step_at_or_below(double threshold) const;
};

/// Teacher-forced training with label smoothing, Adam, clipping and the
/// polynomial schedule. Deterministic in (model, data, config).
TrainResult run_training(const PairSource& source, const std::vector<SequencePair>& dev,
                         TranslationModel<float> model, const TrainingConfig& config,
                         const TrainOptions& options = {});

/// Text -> unit training. Rejects pairs whose tokens fall outside the model
/// vocabulary.
TrainResult train(const std::vector<SequencePair>& pairs, const std::vector<SequencePair>& dev,
                  TranslationModel<float> model, const TrainingConfig& config,
                  const TrainOptions& options = {});

/// Throws ValidationError reporting both hashes when they differ.
void check_vocab(const model::ModelConfig& config, const corpus::Vocabulary& vocab);

/// Denoising pairs for the given examples: noised tagged source text in,
/// clean words out. `seed` fixes the noise draw.
std::vector<SequencePair> denoising_pairs(const std::vector<corpus::ParallelExample>& examples,
                                          const corpus::Vocabulary& vocab,
                                          const NoiseConfig& noise, std::uint64_t seed);

/// Same-language reconstruction over the source text of `languages`, with a
/// fresh noise draw every epoch.
TrainResult pretrain(const corpus::CorpusBundle& bundle, const std::vector<std::string>& languages,
                     TranslationModel<float> model, const TrainingConfig& config,
                     const NoiseConfig& noise = {}, const TrainOptions& options = {});

/// Token-weighted label-smoothed loss over `pairs` without dropout.
double dev_loss(const TranslationModel<float>& model, const std::vector<SequencePair>& pairs,
                double label_smoothing, std::size_t max_tokens);

/// Teacher-forced next-token accuracy over `pairs` without dropout.
AccuracyCount teacher_forced_accuracy(const TranslationModel<float>& model,
                                      const std::vector<SequencePair>& pairs,
                                      std::size_t max_tokens);

}  // namespace unitrans::training
