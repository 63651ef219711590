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

namespace unitrans::training {

using corpus::TokenId;

struct NoiseConfig {
  /// Fraction of noisable tokens covered by mask spans.
  double mask_ratio = 0.3;
  /// Poisson mean of span lengths (minimum length 1).
  double mean_span = 3.0;
  /// Per-token deletion probability among the tokens left unmasked.
  double delete_ratio = 0.1;

  void validate() const;
};

struct NoisedSequence {
  std::vector<TokenId> input;
  std::vector<TokenId> original;
  /// Noisable tokens covered by mask spans.
  std::size_t masked = 0;
  std::size_t noisable = 0;
};

/// Span masking then deletion. Language tags and specials are never
/// touched. With n noisable tokens the masked count is
/// floor(r n) + Bernoulli(frac(r n)), so its expectation is exactly r n.
/// Each span becomes one mask token; spans never touch each other unless
/// there is no room to separate them.
NoisedSequence apply_noise(const std::vector<TokenId>& tokens, const corpus::Vocabulary& vocab,
                           const NoiseConfig& config, std::uint64_t seed);

}  // namespace unitrans::training
