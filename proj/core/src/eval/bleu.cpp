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

#include "unitrans/eval/bleu.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "unitrans/common/error.hpp"
#include "unitrans/corpus/vocabulary.hpp"

namespace unitrans::eval {

namespace {

using Ngram = std::vector<std::string>;

std::map<Ngram, std::size_t> count_ngrams(const std::vector<std::string>& tokens, std::size_t n) {
  std::map<Ngram, std::size_t> counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    ++counts[Ngram(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                   tokens.begin() + static_cast<std::ptrdiff_t>(i + n))];
  }
  return counts;
}

}  // namespace

std::vector<std::string> bleu_tokenize(const std::string& sentence) {
  std::istringstream in(corpus::lowercase(sentence));
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(std::move(w));
  return out;
}

BleuReport bleu_tokens(const std::vector<std::vector<std::string>>& hypotheses,
                       const std::vector<std::vector<std::string>>& references, std::size_t max_n) {
  if (hypotheses.size() != references.size()) {
    throw ValidationError("bleu: " + std::to_string(hypotheses.size()) + " hypotheses vs " +
                          std::to_string(references.size()) + " references");
  }
  if (hypotheses.empty()) throw ValidationError("bleu: at least one pair is required");
  if (max_n < 1 || max_n > 4) throw ValidationError("bleu: max_n must lie in [1, 4]");
  BleuReport r;
  std::array<std::size_t, 4> ref_totals{};
  for (std::size_t i = 0; i < hypotheses.size(); ++i) {
    std::vector<std::string> hyp = hypotheses[i], ref = references[i];
    for (auto& w : hyp) w = corpus::lowercase(w);
    for (auto& w : ref) w = corpus::lowercase(w);
    r.hypothesis_length += hyp.size();
    r.reference_length += ref.size();
    for (std::size_t n = 1; n <= max_n; ++n) {
      const auto hc = count_ngrams(hyp, n);
      const auto rc = count_ngrams(ref, n);
      for (const auto& [g, c] : hc) {
        const auto it = rc.find(g);
        r.matches[n - 1] += std::min(c, it == rc.end() ? std::size_t{0} : it->second);
        r.totals[n - 1] += c;
      }
      ref_totals[n - 1] += ref.size() >= n ? ref.size() - n + 1 : 0;
    }
  }
  for (std::size_t n = 0; n < max_n; ++n) {
    r.precisions[n] = r.totals[n] == 0 ? 0.0 : static_cast<double>(r.matches[n]) / r.totals[n];
  }
  if (r.hypothesis_length == 0) {
    r.bleu = 0.0;
    r.brevity_penalty = 0.0;
    return r;
  }
  const double c = static_cast<double>(r.hypothesis_length);
  const double ref_len = static_cast<double>(r.reference_length);
  r.brevity_penalty = c < ref_len ? std::exp(1.0 - ref_len / c) : 1.0;
  double log_sum = 0.0;
  std::size_t orders = 0;
  for (std::size_t n = 0; n < max_n; ++n) {
    if (r.totals[n] == 0 && ref_totals[n] == 0) continue;
    log_sum += std::log(std::max(r.precisions[n], kPrecisionFloor));
    ++orders;
  }
  r.bleu = orders == 0 ? 0.0 : 100.0 * r.brevity_penalty * std::exp(log_sum / static_cast<double>(orders));
  return r;
}

BleuReport bleu(const std::vector<std::string>& hypotheses,
                const std::vector<std::string>& references, std::size_t max_n) {
  std::vector<std::vector<std::string>> h, r;
  h.reserve(hypotheses.size());
  r.reserve(references.size());
  for (const auto& s : hypotheses) h.push_back(bleu_tokenize(s));
  for (const auto& s : references) r.push_back(bleu_tokenize(s));
  return bleu_tokens(h, r, max_n);
}

}  // namespace unitrans::eval
