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
#include <string>
#include <vector>

#include "unitrans/corpus/batching.hpp"
#include "unitrans/model/config.hpp"
#include "unitrans/numerics/graph.hpp"

namespace unitrans::model {

using corpus::TokenId;
using numerics::Graph;
using numerics::NodeId;
using numerics::ParameterSet;
using numerics::Tensor;

/// Pre-layer-norm transformer encoder-decoder over the joint vocabulary.
/// One embedding table serves as encoder input, decoder input and output
/// projection.
template <typename T>
class TranslationModel {
 public:
  TranslationModel() = default;

  /// Scaled-normal weights, zero biases, unit layer-norm gains.
  static TranslationModel init(const ModelConfig& config, std::uint64_t seed);
  /// Wraps existing parameters; names and shapes must match the config.
  static TranslationModel from_parameters(const ModelConfig& config, ParameterSet<T> params);

  const ModelConfig& config() const { return config_; }
  ParameterSet<T>& parameters() { return params_; }
  const ParameterSet<T>& parameters() const { return params_; }
  std::size_t num_parameters() const;

  /// Encoder states [batch * source_len, d_model].
  NodeId build_encoder(Graph<T>& g, const std::vector<TokenId>& source, std::size_t batch,
                       std::size_t source_len, const std::vector<std::size_t>& source_lengths) const;

  /// Decoder logits. Rows are batch * target_len, or only `rows` when given.
  NodeId build_decoder(Graph<T>& g, NodeId memory, const std::vector<std::size_t>& source_lengths,
                       std::size_t source_len, const std::vector<TokenId>& target_in,
                       std::size_t batch, std::size_t target_len,
                       const std::vector<std::size_t>& target_lengths,
                       const std::vector<std::int32_t>& rows = {}) const;

  /// Teacher-forced logits [batch * target_len, vocab] for a padded batch.
  NodeId build_logits(Graph<T>& g, const corpus::Batch& batch) const;

  /// Single-example teacher forcing without dropout: logits [|target_in|, V].
  Tensor<T> forward_teacher_forced(const std::vector<TokenId>& source,
                                   const std::vector<TokenId>& target_in) const;

  /// Encoder states for one source sequence, [|source|, d_model].
  Tensor<T> encode(const std::vector<TokenId>& source) const;

  /// Last-position logits [prefixes, V] for equal-length decoder prefixes
  /// attending to one encoded source.
  Tensor<T> next_logits(const Tensor<T>& memory,
                        const std::vector<std::vector<TokenId>>& prefixes) const;

  template <typename U>
  TranslationModel<U> cast() const;

 private:
  void check_tokens(const std::vector<TokenId>& tokens, std::size_t len, const char* what) const;
  NodeId embed(Graph<T>& g, const std::vector<TokenId>& tokens, std::size_t batch, std::size_t len,
               std::uint64_t stream) const;
  NodeId attention_block(Graph<T>& g, const std::string& prefix, NodeId query_in, NodeId memory,
                         const numerics::AttentionSpec& spec) const;
  NodeId ffn_block(Graph<T>& g, const std::string& prefix, NodeId x) const;
  NodeId norm(Graph<T>& g, const std::string& prefix, NodeId x) const;
  NodeId param(Graph<T>& g, const std::string& name) const;

  ModelConfig config_;
  ParameterSet<T> params_;
  /// Sinusoidal table [max_positions, d_model].
  Tensor<T> positions_;
};

extern template class TranslationModel<float>;
extern template class TranslationModel<double>;

}  // namespace unitrans::model
