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

#include <nlohmann/json.hpp>

#include "unitrans/corpus/vocabulary.hpp"

namespace unitrans::model {

struct ModelConfig {
  std::size_t layers_enc = 2;
  std::size_t layers_dec = 2;
  std::size_t d_model = 64;
  std::size_t d_ff = 256;
  std::size_t heads = 4;
  double dropout = 0.3;
  double attention_dropout = 0.1;
  std::size_t max_positions = 256;

  // Joint vocabulary geometry, copied from corpus::Vocabulary.
  std::size_t vocab_size = 0;
  std::uint64_t vocab_hash = 0;
  std::int32_t unit_begin = 0;
  std::size_t num_units = 0;

  /// Throws ValidationError on inconsistent fields.
  void validate() const;
  bool operator==(const ModelConfig&) const = default;
};

/// Config with the vocabulary fields filled from `vocab`.
ModelConfig config_for(const corpus::Vocabulary& vocab, ModelConfig base = {});

/// Closed-form trainable parameter count for the pre-LN encoder-decoder with
/// tied embeddings and sinusoidal positions:
///   V*d
///   + Le * (4d^2 + 4d  + 2*2d + 2*d*f + f + d)        encoder layers
///   + 2d                                              final encoder norm
///   + Ld * (8d^2 + 8d  + 3*2d + 2*d*f + f + d)        decoder layers
///   + 2d                                              final decoder norm
std::size_t parameter_count(const ModelConfig& config);

void to_json(nlohmann::json& j, const ModelConfig& c);
void from_json(const nlohmann::json& j, ModelConfig& c);

}  // namespace unitrans::model
