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

#include <cmath>
#include <functional>
#include <limits>

#include <gtest/gtest.h>

#include "unitrans/common/error.hpp"
#include "unitrans/common/random.hpp"
#include "unitrans/decoding/search.hpp"

namespace unitrans::decoding {
namespace {

using corpus::Vocabulary;

// Vocabulary rows of size 8: eos = 2, units at 5, 6, 7.
OutputSpace small_space() {
  OutputSpace s;
  s.unit_begin = 5;
  s.num_units = 3;
  return s;
}

// Log-probabilities that are a pseudo-random function of the prefix.
class HashScorer : public StepScorer {
 public:
  explicit HashScorer(std::uint64_t seed, OutputSpace space) : seed_(seed), space_(space) {}

  std::vector<std::vector<double>> log_probs(const std::vector<std::vector<TokenId>>& prefixes) override {
    std::vector<std::vector<double>> out;
    for (const auto& p : prefixes) {
      std::uint64_t h = seed_;
      for (TokenId t : p) h = mix64(h ^ static_cast<std::uint64_t>(t));
      std::vector<double> row(8, -std::numeric_limits<double>::infinity());
      double z = 0.0;
      for (TokenId t = 0; t < 8; ++t) {
        if (!space_.admissible(t)) continue;
        row[t] = 4.0 * counter_uniform(h, 0, 0, static_cast<std::uint64_t>(t));
        z += std::exp(row[t]);
      }
      for (auto& x : row) x -= std::log(z);
      out.push_back(std::move(row));
      ++calls;
    }
    return out;
  }
  std::size_t calls = 0;

 private:
  std::uint64_t seed_;
  OutputSpace space_;
};

// Every sequence the search could return: units then eos within max_len
// tokens, or max_len units cut off by the bound.
Hypothesis exhaustive_best(StepScorer& scorer, const OutputSpace& space, std::size_t max_len, double alpha) {
  Hypothesis best;
  best.score = -std::numeric_limits<double>::infinity();
  const auto consider = [&](Hypothesis h) {
    if (h.score > best.score || (h.score == best.score && h.tokens < best.tokens)) best = std::move(h);
  };
  std::function<void(std::vector<TokenId>, double)> walk = [&](std::vector<TokenId> tokens, double lp) {
    std::vector<TokenId> prefix{space.bos};
    prefix.insert(prefix.end(), tokens.begin(), tokens.end());
    const auto row = scorer.log_probs({prefix}).at(0);
    consider({tokens, lp + row[space.eos], normalized_score(lp + row[space.eos], tokens.size() + 1, alpha), true});
    for (std::size_t u = 0; u < space.num_units; ++u) {
      const TokenId t = space.unit_begin + static_cast<TokenId>(u);
      auto next = tokens;
      next.push_back(t);
      if (next.size() == max_len) {
        consider({next, lp + row[t], normalized_score(lp + row[t], max_len, alpha), false});
      } else {
        walk(next, lp + row[t]);
      }
    }
  };
  walk({}, 0.0);
  return best;
}

TEST(Beam, WideBeamFindsTheExhaustiveOptimum) {
  const OutputSpace space = small_space();
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    for (double alpha : {0.0, 1.0}) {
      HashScorer scorer(seed, space);
      DecodeConfig config;
      config.beam_size = 64;
      config.length_penalty = alpha;
      const auto nbest = beam_search(scorer, space, 4, config);
      const auto want = exhaustive_best(scorer, space, 4, alpha);
      ASSERT_FALSE(nbest.empty());
      EXPECT_NEAR(nbest.front().score, want.score, 1e-12) << seed;
      EXPECT_EQ(nbest.front().tokens, want.tokens) << seed;
      EXPECT_EQ(nbest.front().finished, want.finished) << seed;
    }
  }
}

TEST(Beam, BeamOfOneIsGreedy) {
  const OutputSpace space = small_space();
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    HashScorer a(seed, space), b(seed, space);
    DecodeConfig config;
    config.beam_size = 1;
    const auto beam = beam_search(a, space, 6, config);
    const auto greedy = greedy_search(b, space, 6);
    ASSERT_EQ(beam.size(), 1u);
    EXPECT_EQ(beam[0].tokens, greedy.tokens);
    EXPECT_DOUBLE_EQ(beam[0].log_prob, greedy.log_prob);
    EXPECT_DOUBLE_EQ(beam[0].score, greedy.score);
  }
}

TEST(Beam, NbestIsSortedAndBounded) {
  const OutputSpace space = small_space();
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    HashScorer scorer(seed, space);
    DecodeConfig config;
    config.beam_size = 3;
    const auto nbest = beam_search(scorer, space, 8, config);
    ASSERT_LE(nbest.size(), 3u);
    for (std::size_t i = 1; i < nbest.size(); ++i) EXPECT_GE(nbest[i - 1].score, nbest[i].score);
    for (const auto& h : nbest) {
      EXPECT_LE(h.tokens.size() + (h.finished ? 1 : 0), 8u);
      for (TokenId t : h.tokens) EXPECT_TRUE(space.admissible(t) && t != space.eos);
    }
  }
}

TEST(Beam, SearchIsDeterministic) {
  const OutputSpace space = small_space();
  HashScorer a(9, space), b(9, space);
  DecodeConfig config;
  const auto x = beam_search(a, space, 10, config), y = beam_search(b, space, 10, config);
  ASSERT_EQ(x.size(), y.size());
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_EQ(x[i].tokens, y[i].tokens);
}

// A two-step fixture where the greedy first choice leads to a poor ending.
class FixtureScorer : public StepScorer {
 public:
  std::vector<std::vector<double>> log_probs(const std::vector<std::vector<TokenId>>& prefixes) override {
    std::vector<std::vector<double>> out;
    for (const auto& p : prefixes) {
      std::vector<double> probs(8, 0.0);
      if (p.size() == 1) {
        probs[5] = 0.5;
        probs[6] = 0.4;
        probs[2] = 0.1;
      } else if (p.size() == 2 && p[1] == 5) {
        probs[2] = 0.3;
        probs[5] = 0.35;
        probs[6] = 0.35;
      } else {
        probs[2] = 1.0;
      }
      std::vector<double> row;
      for (double q : probs) row.push_back(std::log(q));
      out.push_back(std::move(row));
    }
    return out;
  }
};

TEST(Beam, BeatsGreedyOnFixture) {
  FixtureScorer scorer;
  DecodeConfig config;
  config.beam_size = 2;
  config.length_penalty = 0.0;
  const auto greedy = greedy_search(scorer, small_space(), 5, 0.0);
  EXPECT_EQ(greedy.tokens, (std::vector<TokenId>{5, 5}));
  EXPECT_NEAR(greedy.log_prob, std::log(0.5 * 0.35), 1e-12);
  const auto beam = beam_search(scorer, small_space(), 5, config);
  EXPECT_EQ(beam.front().tokens, (std::vector<TokenId>{6}));
  EXPECT_NEAR(beam.front().log_prob, std::log(0.4), 1e-12);
}

TEST(Beam, LengthPenaltyFavoursLongerOutput) {
  EXPECT_DOUBLE_EQ(normalized_score(-6.0, 3, 1.0), -2.0);
  EXPECT_DOUBLE_EQ(normalized_score(-6.0, 3, 0.0), -6.0);
  EXPECT_DOUBLE_EQ(normalized_score(-6.0, 0, 1.0), -6.0);
}

TEST(Decode, MaxLenAndValidation) {
  DecodeConfig c;
  EXPECT_EQ(c.max_len(7), 38u);
  c.max_len_ratio = 1.5;
  EXPECT_EQ(c.max_len(3), 14u);
  c.beam_size = 0;
  EXPECT_THROW(c.validate(), ValidationError);
  HashScorer s(1, small_space());
  EXPECT_THROW(greedy_search(s, small_space(), 0), ValidationError);
}

TEST(Decode, ToUnitsCollapsesAndChecksRange) {
  const OutputSpace space = small_space();
  const auto u = to_units({5, 5, 7, 6, 6, 2}, space);
  EXPECT_EQ(u.units, (std::vector<units::UnitId>{0, 2, 1}));
  EXPECT_TRUE(u.collapsed);
  EXPECT_THROW(to_units({5, 4}, space), ValidationError);
}

model::ModelConfig toy_config() {
  model::ModelConfig base;
  base.d_model = 16;
  base.heads = 2;
  base.d_ff = 16;
  base.layers_enc = 1;
  base.layers_dec = 1;
  base.max_positions = 24;
  return model::config_for(Vocabulary({"aa"}, {"x", "y", "z"}, 5), base);
}

TEST(Decode, ModelBeamNeverScoresBelowGreedy) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto m = model::TranslationModel<float>::init(toy_config(), seed);
    const std::vector<TokenId> src{5, 6, 7, 8, 2};
    const auto g = greedy_decode(m, src);
    DecodeConfig config;
    config.max_len_offset = 4;
    const auto b = beam_decode(m, src, config);
    EXPECT_GE(b.nbest.front().score, greedy_decode(m, src, config).nbest.front().score - 1e-12);
    EXPECT_FALSE(units::has_adjacent_repeats(b.units.units));
    EXPECT_LE(b.nbest.front().tokens.size(), config.max_len(src.size()));
    EXPECT_EQ(b.units, beam_decode(m, src, config).units);
    EXPECT_LE(g.nbest.front().tokens.size(), 24u);
  }
}

TEST(Decode, ModelScorerIsNormalizedOverTheOutputSpace) {
  const auto m = model::TranslationModel<float>::init(toy_config(), 2);
  const OutputSpace space = output_space(m.config());
  ModelScorer scorer(m, {5, 6, 2}, space);
  const auto rows = scorer.log_probs({{1}, {1}});
  ASSERT_EQ(rows.size(), 2u);
  double z = 0.0;
  for (std::size_t t = 0; t < rows[0].size(); ++t) {
    if (space.admissible(static_cast<TokenId>(t))) z += std::exp(rows[0][t]);
    else EXPECT_EQ(rows[0][t], -std::numeric_limits<double>::infinity());
  }
  EXPECT_NEAR(z, 1.0, 1e-9);
  EXPECT_EQ(rows[0], rows[1]);
}

}  // namespace
}  // namespace unitrans::decoding
