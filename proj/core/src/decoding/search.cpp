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

#include "unitrans/decoding/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "unitrans/common/error.hpp"

namespace unitrans::decoding {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

bool better(const Hypothesis& a, const Hypothesis& b) {
  if (a.score != b.score) return a.score > b.score;
  return a.tokens < b.tokens;
}

/// Admissible tokens of one row ordered by (log-prob desc, id asc).
std::vector<TokenId> ranked(const std::vector<double>& row, const OutputSpace& space, std::size_t limit) {
  std::vector<TokenId> ids;
  if (space.admissible(space.eos) && static_cast<std::size_t>(space.eos) < row.size()) ids.push_back(space.eos);
  for (std::size_t u = 0; u < space.num_units; ++u) {
    const TokenId t = space.unit_begin + static_cast<TokenId>(u);
    if (static_cast<std::size_t>(t) < row.size()) ids.push_back(t);
  }
  if (ids.empty()) throw ValidationError("decoding: output space is empty");
  const auto cmp = [&row](TokenId a, TokenId b) {
    if (row[a] != row[b]) return row[a] > row[b];
    return a < b;
  };
  limit = std::min(limit, ids.size());
  std::partial_sort(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(limit), ids.end(), cmp);
  ids.resize(limit);
  return ids;
}

std::vector<TokenId> with_bos(const std::vector<TokenId>& tokens, TokenId bos) {
  std::vector<TokenId> p;
  p.reserve(tokens.size() + 1);
  p.push_back(bos);
  p.insert(p.end(), tokens.begin(), tokens.end());
  return p;
}

}  // namespace

std::size_t DecodeConfig::max_len(std::size_t source_len) const {
  return static_cast<std::size_t>(std::floor(max_len_ratio * static_cast<double>(source_len))) +
         max_len_offset;
}

void DecodeConfig::validate() const {
  if (beam_size < 1) throw ValidationError("decode: beam_size must be >= 1");
  if (!(max_len_ratio >= 0.0)) throw ValidationError("decode: max_len_ratio must be >= 0");
  if (max_len_offset < 1 && max_len_ratio == 0.0) throw ValidationError("decode: length bound must be >= 1");
  if (!(length_penalty >= 0.0)) throw ValidationError("decode: length_penalty must be >= 0");
}

double normalized_score(double log_prob, std::size_t length, double alpha) {
  if (length == 0) return log_prob;
  return log_prob / std::pow(static_cast<double>(length), alpha);
}

Hypothesis greedy_search(StepScorer& scorer, const OutputSpace& space, std::size_t max_len,
                         double length_penalty) {
  if (max_len == 0) throw ValidationError("decoding: max_len must be >= 1");
  Hypothesis h;
  for (std::size_t t = 0; t < max_len; ++t) {
    const auto rows = scorer.log_probs({with_bos(h.tokens, space.bos)});
    const TokenId best = ranked(rows.at(0), space, 1).front();
    h.log_prob += rows[0][best];
    if (best == space.eos) {
      h.finished = true;
      break;
    }
    h.tokens.push_back(best);
  }
  h.score = normalized_score(h.log_prob, h.tokens.size() + (h.finished ? 1 : 0), length_penalty);
  return h;
}

std::vector<Hypothesis> beam_search(StepScorer& scorer, const OutputSpace& space,
                                    std::size_t max_len, const DecodeConfig& config) {
  config.validate();
  if (max_len == 0) throw ValidationError("decoding: max_len must be >= 1");
  const std::size_t k = config.beam_size;
  const double alpha = config.length_penalty;
  std::vector<Hypothesis> live(1), finished;
  for (std::size_t t = 0; t < max_len && !live.empty(); ++t) {
    std::vector<std::vector<TokenId>> prefixes;
    prefixes.reserve(live.size());
    for (const auto& h : live) prefixes.push_back(with_bos(h.tokens, space.bos));
    const auto rows = scorer.log_probs(prefixes);
    if (rows.size() != live.size()) throw ValidationError("decoding: scorer returned the wrong row count");

    std::vector<Hypothesis> candidates;
    for (std::size_t i = 0; i < live.size(); ++i) {
      for (TokenId tok : ranked(rows[i], space, k)) {
        Hypothesis c;
        c.tokens = live[i].tokens;
        c.tokens.push_back(tok);
        c.log_prob = live[i].log_prob + rows[i][tok];
        candidates.push_back(std::move(c));
      }
    }
    std::sort(candidates.begin(), candidates.end(), [](const Hypothesis& a, const Hypothesis& b) {
      if (a.log_prob != b.log_prob) return a.log_prob > b.log_prob;
      return a.tokens < b.tokens;
    });
    candidates.resize(std::min(candidates.size(), k));

    live.clear();
    for (auto& c : candidates) {
      if (c.tokens.back() == space.eos) {
        c.tokens.pop_back();
        c.finished = true;
        c.score = normalized_score(c.log_prob, c.tokens.size() + 1, alpha);
        finished.push_back(std::move(c));
      } else {
        live.push_back(std::move(c));
      }
    }
    if (t + 1 == max_len) {
      for (auto& h : live) {
        h.score = normalized_score(h.log_prob, h.tokens.size(), alpha);
        finished.push_back(std::move(h));
      }
      live.clear();
    }
    if (!finished.empty() && !live.empty()) {
      double best = kNegInf;
      for (const auto& f : finished) best = std::max(best, f.score);
      double bound = kNegInf;
      for (const auto& h : live) bound = std::max(bound, normalized_score(h.log_prob, max_len, alpha));
      if (best > bound) live.clear();
    }
  }
  std::sort(finished.begin(), finished.end(), better);
  if (finished.size() > k) finished.resize(k);
  return finished;
}

ModelScorer::ModelScorer(const model::TranslationModel<float>& model,
                         const std::vector<TokenId>& source, OutputSpace space)
    : model_(model), memory_(model.encode(source)), space_(space) {}

std::vector<std::vector<double>> ModelScorer::log_probs(
    const std::vector<std::vector<TokenId>>& prefixes) {
  const numerics::Tensor<float> logits = model_.next_logits(memory_, prefixes);
  const std::size_t v = logits.cols();
  std::vector<std::vector<double>> out(prefixes.size(), std::vector<double>(v, kNegInf));
  for (std::size_t r = 0; r < prefixes.size(); ++r) {
    const float* x = logits.raw() + r * v;
    double mx = kNegInf;
    for (std::size_t c = 0; c < v; ++c) {
      if (space_.admissible(static_cast<TokenId>(c))) mx = std::max(mx, static_cast<double>(x[c]));
    }
    double se = 0.0;
    for (std::size_t c = 0; c < v; ++c) {
      if (space_.admissible(static_cast<TokenId>(c))) se += std::exp(static_cast<double>(x[c]) - mx);
    }
    const double lse = mx + std::log(se);
    for (std::size_t c = 0; c < v; ++c) {
      if (space_.admissible(static_cast<TokenId>(c))) out[r][c] = static_cast<double>(x[c]) - lse;
    }
  }
  return out;
}

OutputSpace output_space(const model::ModelConfig& config) {
  OutputSpace s;
  s.unit_begin = config.unit_begin;
  s.num_units = config.num_units;
  return s;
}

units::UnitSequence to_units(const std::vector<TokenId>& tokens, const OutputSpace& space) {
  units::UnitSequence seq;
  for (TokenId t : tokens) {
    if (t == space.eos) continue;
    if (!space.admissible(t)) throw ValidationError("decoding: inadmissible token " + std::to_string(t));
    seq.units.push_back(t - space.unit_begin);
  }
  return units::collapse(seq);
}

namespace {

std::size_t bound_for(const model::TranslationModel<float>& model, const std::vector<TokenId>& source,
                      const DecodeConfig& config) {
  return std::min(config.max_len(source.size()), model.config().max_positions);
}

}  // namespace

DecodeResult greedy_decode(const model::TranslationModel<float>& model,
                           const std::vector<TokenId>& source, const DecodeConfig& config) {
  config.validate();
  const OutputSpace space = output_space(model.config());
  ModelScorer scorer(model, source, space);
  DecodeResult r;
  r.nbest.push_back(greedy_search(scorer, space, bound_for(model, source, config), config.length_penalty));
  r.units = to_units(r.nbest.front().tokens, space);
  return r;
}

DecodeResult beam_decode(const model::TranslationModel<float>& model,
                         const std::vector<TokenId>& source, const DecodeConfig& config) {
  config.validate();
  const OutputSpace space = output_space(model.config());
  ModelScorer scorer(model, source, space);
  const std::size_t max_len = bound_for(model, source, config);
  DecodeResult r;
  r.nbest = beam_search(scorer, space, max_len, config);
  if (config.beam_size > 1) {
    Hypothesis g = greedy_search(scorer, space, max_len, config.length_penalty);
    const bool present = std::any_of(r.nbest.begin(), r.nbest.end(),
                                     [&g](const Hypothesis& h) { return h.tokens == g.tokens; });
    if (!present) {
      r.nbest.push_back(std::move(g));
      std::sort(r.nbest.begin(), r.nbest.end(), better);
      if (r.nbest.size() > config.beam_size) r.nbest.resize(config.beam_size);
    }
  }
  r.units = to_units(r.nbest.front().tokens, space);
  return r;
}

}  // namespace unitrans::decoding
