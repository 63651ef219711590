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

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace unitrans::eval {

inline constexpr double kPrecisionFloor = 1e-9;

struct BleuReport {
  /// 0-100.
  double bleu = 0.0;
  /// Modified n-gram precisions p1..p4 (unfloored).
  std::array<double, 4> precisions{};
  std::array<std::size_t, 4> matches{};
  std::array<std::size_t, 4> totals{};
  double brevity_penalty = 0.0;
  std::size_t hypothesis_length = 0;
  std::size_t reference_length = 0;
};

/// Lowercase, then split on whitespace.
std::vector<std::string> bleu_tokenize(const std::string& sentence);

/// Corpus BLEU with clipped n-gram counts pooled over all pairs. Zero
/// precisions are floored at 1e-9 inside the geometric mean; an order with
/// no n-grams on either side is left out of the mean. Brevity penalty
/// exp(1 - r/c) when c < r. An empty hypothesis corpus scores 0 with bp 0.
BleuReport bleu(const std::vector<std::string>& hypotheses,
                const std::vector<std::string>& references, std::size_t max_n = 4);

/// Pre-tokenized variant; tokens are lowercased.
BleuReport bleu_tokens(const std::vector<std::vector<std::string>>& hypotheses,
                       const std::vector<std::vector<std::string>>& references,
                       std::size_t max_n = 4);

}  // namespace unitrans::eval
