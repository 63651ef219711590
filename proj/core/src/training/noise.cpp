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

#include "unitrans/training/noise.hpp"

#include <algorithm>
#include <cmath>

#include "unitrans/common/error.hpp"
#include "unitrans/common/random.hpp"

namespace unitrans::training {

void NoiseConfig::validate() const {
  if (!(mask_ratio >= 0.0 && mask_ratio <= 1.0)) throw ValidationError("noise: mask_ratio must lie in [0, 1]");
  if (!(mean_span > 0.0)) throw ValidationError("noise: mean_span must be > 0");
  if (!(delete_ratio >= 0.0 && delete_ratio < 1.0)) {
    throw ValidationError("noise: delete_ratio must lie in [0, 1)");
  }
}

NoisedSequence apply_noise(const std::vector<TokenId>& tokens, const corpus::Vocabulary& vocab,
                           const NoiseConfig& config, std::uint64_t seed) {
  config.validate();
  if (tokens.empty()) throw ValidationError("apply_noise: empty sequence");
  NoisedSequence out;
  out.original = tokens;

  std::vector<std::size_t> noisable;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const TokenId t = tokens[i];
    if (t >= vocab.text_begin() || t == corpus::Vocabulary::kUnk) noisable.push_back(i);
  }
  const std::size_t n = noisable.size();
  out.noisable = n;
  Rng rng(seed);

  const double want = config.mask_ratio * static_cast<double>(n);
  std::size_t m = static_cast<std::size_t>(std::floor(want));
  if (rng.uniform() < want - std::floor(want)) ++m;
  m = std::min(m, n);
  out.masked = m;

  std::vector<std::size_t> spans;
  for (std::size_t covered = 0; covered < m;) {
    const std::size_t len = std::min(std::max<std::size_t>(1, rng.poisson(config.mean_span)), m - covered);
    spans.push_back(len);
    covered += len;
  }
  const std::size_t kept = n - m;
  while (spans.size() > kept + 1) {
    spans[spans.size() - 2] += spans.back();
    spans.pop_back();
  }
  // Span j sits in gap g_j, i.e. right before the g_j-th unmasked token.
  std::vector<std::size_t> gaps(kept + 1);
  for (std::size_t g = 0; g <= kept; ++g) gaps[g] = g;
  rng.shuffle(std::span<std::size_t>(gaps));
  gaps.resize(spans.size());
  std::sort(gaps.begin(), gaps.end());

  // 0 keep, 1 starts a span, 2 inside a span.
  std::vector<std::uint8_t> state(n, 0);
  std::size_t pos = 0, unmasked = 0, next_span = 0;
  while (pos < n) {
    if (next_span < gaps.size() && gaps[next_span] == unmasked) {
      for (std::size_t k = 0; k < spans[next_span]; ++k) state[pos + k] = k == 0 ? 1 : 2;
      pos += spans[next_span];
      ++next_span;
      continue;
    }
    ++unmasked;
    ++pos;
  }

  std::size_t j = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (j < n && noisable[j] == i) {
      const std::uint8_t s = state[j++];
      if (s == 1) {
        out.input.push_back(corpus::Vocabulary::kMask);
      } else if (s == 0) {
        if (config.delete_ratio > 0.0 && rng.uniform() < config.delete_ratio) continue;
        out.input.push_back(tokens[i]);
      }
      continue;
    }
    out.input.push_back(tokens[i]);
  }
  return out;
}

}  // namespace unitrans::training
