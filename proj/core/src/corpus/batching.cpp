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

#include "unitrans/corpus/batching.hpp"

#include <algorithm>
#include <numeric>

#include "unitrans/common/error.hpp"
#include "unitrans/common/random.hpp"

namespace unitrans::corpus {

std::size_t Batch::real_tokens() const {
  std::size_t n = 0;
  for (std::size_t b = 0; b < size; ++b) n += source_lengths[b] + target_lengths[b];
  return n;
}

std::size_t pair_length(const SequencePair& pair) {
  return std::max(pair.source.size(), pair.target.size() + 1);
}

Batch make_batch(const std::vector<const SequencePair*>& pairs) {
  Batch batch;
  batch.size = pairs.size();
  for (const auto* p : pairs) {
    if (p->source.empty()) throw ValidationError("batch: example " + p->id + " has empty source");
    batch.source_len = std::max(batch.source_len, p->source.size());
    batch.target_len = std::max(batch.target_len, p->target.size() + 1);
  }
  batch.source.assign(batch.size * batch.source_len, Vocabulary::kPad);
  batch.source_mask.assign(batch.size * batch.source_len, 0);
  batch.target_in.assign(batch.size * batch.target_len, Vocabulary::kPad);
  batch.target_out.assign(batch.size * batch.target_len, Vocabulary::kPad);
  batch.target_mask.assign(batch.size * batch.target_len, 0);
  for (std::size_t b = 0; b < batch.size; ++b) {
    const auto& p = *pairs[b];
    batch.ids.push_back(p.id);
    batch.source_lengths.push_back(p.source.size());
    batch.target_lengths.push_back(p.target.size() + 1);
    for (std::size_t t = 0; t < p.source.size(); ++t) {
      batch.source[b * batch.source_len + t] = p.source[t];
      batch.source_mask[b * batch.source_len + t] = 1;
    }
    TokenId* in = batch.target_in.data() + b * batch.target_len;
    TokenId* out = batch.target_out.data() + b * batch.target_len;
    in[0] = Vocabulary::kBos;
    for (std::size_t t = 0; t < p.target.size(); ++t) {
      in[t + 1] = p.target[t];
      out[t] = p.target[t];
    }
    out[p.target.size()] = Vocabulary::kEos;
    for (std::size_t t = 0; t <= p.target.size(); ++t) batch.target_mask[b * batch.target_len + t] = 1;
  }
  return batch;
}

std::vector<Batch> batch_iterator(const std::vector<SequencePair>& pairs, std::size_t max_tokens,
                                  std::uint64_t seed, std::uint64_t epoch) {
  for (const auto& p : pairs) {
    if (pair_length(p) > max_tokens) {
      throw ValidationError("batch: example " + p.id + " has " + std::to_string(pair_length(p)) +
                            " tokens, more than max_tokens=" + std::to_string(max_tokens));
    }
  }
  Rng rng(derive_seed(seed, "batching/epoch/" + std::to_string(epoch)));
  std::vector<std::uint64_t> jitter(pairs.size());
  for (auto& j : jitter) j = rng.next();
  std::vector<std::size_t> order(pairs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto la = pair_length(pairs[a]), lb = pair_length(pairs[b]);
    if (la != lb) return la < lb;
    if (jitter[a] != jitter[b]) return jitter[a] < jitter[b];
    return a < b;
  });

  std::vector<std::vector<const SequencePair*>> groups;
  std::vector<const SequencePair*> current;
  std::size_t current_max = 0;
  for (std::size_t idx : order) {
    const auto& p = pairs[idx];
    const std::size_t len = std::max(current_max, pair_length(p));
    if (!current.empty() && (current.size() + 1) * len > max_tokens) {
      groups.push_back(std::move(current));
      current.clear();
      current_max = 0;
    }
    current.push_back(&p);
    current_max = std::max(current_max, pair_length(p));
  }
  if (!current.empty()) groups.push_back(std::move(current));

  rng.shuffle(std::span<std::vector<const SequencePair*>>(groups));
  std::vector<Batch> batches;
  batches.reserve(groups.size());
  for (const auto& g : groups) batches.push_back(make_batch(g));
  return batches;
}

std::vector<SequencePair> translation_pairs(const std::vector<ParallelExample>& examples,
                                            const Vocabulary& vocab) {
  std::vector<SequencePair> out;
  out.reserve(examples.size());
  for (const auto& ex : examples) {
    SequencePair p;
    p.id = ex.id;
    p.source = vocab.tokenize(ex.source_text, ex.source_lang);
    for (auto u : ex.target_units.units) p.target.push_back(vocab.unit_token(u));
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace unitrans::corpus
