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

#include "unitrans/corpus/corpus.hpp"
#include "unitrans/corpus/vocabulary.hpp"

namespace unitrans::corpus {

/// Token-level training pair. The decoder reads [bos] + target and predicts
/// target + [eos].
struct SequencePair {
  std::string id;
  std::vector<TokenId> source;
  std::vector<TokenId> target;
};

/// Padded batch; pads sit at the tail of every row.
struct Batch {
  std::size_t size = 0;
  std::size_t source_len = 0;
  std::size_t target_len = 0;
  std::vector<TokenId> source;  // size x source_len
  std::vector<TokenId> target_in;  // size x target_len
  std::vector<TokenId> target_out;  // size x target_len
  std::vector<std::size_t> source_lengths;
  std::vector<std::size_t> target_lengths;
  /// 1 for real tokens, 0 for padding.
  std::vector<std::uint8_t> source_mask;
  std::vector<std::uint8_t> target_mask;
  std::vector<std::string> ids;

  std::size_t real_tokens() const;
};

/// Length used for the max_tokens budget: max(|source|, |target| + 1).
std::size_t pair_length(const SequencePair& pair);

/// Assembles one padded batch from the given pairs in order.
Batch make_batch(const std::vector<const SequencePair*>& pairs);

/// Length-bucketed batches of at most max_tokens padded positions, in a
/// seeded order; deterministic in (seed, epoch).
std::vector<Batch> batch_iterator(const std::vector<SequencePair>& pairs, std::size_t max_tokens,
                                  std::uint64_t seed, std::uint64_t epoch);

/// Source tokens -> unit tokens.
std::vector<SequencePair> translation_pairs(const std::vector<ParallelExample>& examples,
                                            const Vocabulary& vocab);

}  // namespace unitrans::corpus
