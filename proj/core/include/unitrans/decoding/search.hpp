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
#include <vector>

#include "unitrans/corpus/vocabulary.hpp"
#include "unitrans/model/transformer.hpp"
#include "unitrans/units/unit_sequence.hpp"

namespace unitrans::decoding {

using corpus::TokenId;

struct DecodeConfig {
  std::size_t beam_size = 5;
  /// Output bound: max_len_ratio * |source| + max_len_offset tokens.
  double max_len_ratio = 4.0;
  std::size_t max_len_offset = 10;
  /// Finished hypotheses compete by log_prob / length^length_penalty.
  double length_penalty = 1.0;

  std::size_t max_len(std::size_t source_len) const;
  void validate() const;
};

/// Tokens a decoder may emit: eos plus one contiguous unit range.
struct OutputSpace {
  TokenId bos = corpus::Vocabulary::kBos;
  TokenId eos = corpus::Vocabulary::kEos;
  TokenId unit_begin = 0;
  std::size_t num_units = 0;

  bool admissible(TokenId t) const {
    return t == eos || (t >= unit_begin && t < unit_begin + static_cast<TokenId>(num_units));
  }
};

/// Next-token log-probabilities for a set of equal-length prefixes, each
/// starting with bos. Rows are over the full vocabulary; entries for
/// inadmissible tokens are ignored by the search.
class StepScorer {
 public:
  virtual ~StepScorer() = default;
  virtual std::vector<std::vector<double>> log_probs(const std::vector<std::vector<TokenId>>& prefixes) = 0;
};

struct Hypothesis {
  /// Emitted tokens, without bos and eos.
  std::vector<TokenId> tokens;
  double log_prob = 0.0;
  double score = 0.0;
  /// False when the length bound cut the hypothesis off.
  bool finished = false;
};

/// Normalized score: log_prob / length^alpha, where length counts eos.
double normalized_score(double log_prob, std::size_t length, double alpha);

/// Argmax over admissible tokens each step until eos or max_len tokens.
Hypothesis greedy_search(StepScorer& scorer, const OutputSpace& space, std::size_t max_len,
                         double length_penalty = 1.0);

/// Length-normalized beam search. Every live hypothesis proposes its
/// beam_size best admissible continuations; the beam_size best candidates
/// by (log_prob, then lexicographic tokens) survive and those ending in eos
/// retire. Search stops when no live hypothesis can still beat the best
/// retired one or the length bound is reached. Returns up to beam_size
/// hypotheses ordered by (score desc, tokens asc).
std::vector<Hypothesis> beam_search(StepScorer& scorer, const OutputSpace& space,
                                    std::size_t max_len, const DecodeConfig& config);

/// Log-softmax over the model's logits restricted to the output space.
class ModelScorer : public StepScorer {
 public:
  ModelScorer(const model::TranslationModel<float>& model, const std::vector<TokenId>& source,
              OutputSpace space);
  std::vector<std::vector<double>> log_probs(const std::vector<std::vector<TokenId>>& prefixes) override;

 private:
  const model::TranslationModel<float>& model_;
  numerics::Tensor<float> memory_;
  OutputSpace space_;
};

struct DecodeResult {
  units::UnitSequence units;
  std::vector<Hypothesis> nbest;
};

OutputSpace output_space(const model::ModelConfig& config);

/// Tokens -> collapsed unit sequence.
units::UnitSequence to_units(const std::vector<TokenId>& tokens, const OutputSpace& space);

DecodeResult greedy_decode(const model::TranslationModel<float>& model,
                           const std::vector<TokenId>& source, const DecodeConfig& config = {});

/// Beam search; the greedy hypothesis also enters the final comparison so
/// the result never scores below greedy.
DecodeResult beam_decode(const model::TranslationModel<float>& model,
                         const std::vector<TokenId>& source, const DecodeConfig& config = {});

}  // namespace unitrans::decoding
