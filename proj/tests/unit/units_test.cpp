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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <gtest/gtest.h>

#include "test_util.hpp"
#include "unitrans/common/error.hpp"
#include "unitrans/common/random.hpp"
#include "unitrans/units/frames.hpp"
#include "unitrans/units/kmeans.hpp"
#include "unitrans/units/unit_sequence.hpp"

namespace unitrans::units {
namespace {

std::vector<UnitId> random_units(Rng& rng, std::size_t max_len, std::size_t k) {
  std::vector<UnitId> out(rng.below(max_len + 1));
  for (auto& u : out) u = static_cast<UnitId>(rng.below(k));
  return out;
}

FrameSequence make_frames(std::size_t dim, std::vector<float> data) {
  FrameSequence f;
  f.dim = dim;
  f.data = std::move(data);
  return f;
}

UnitId brute_force_nearest(const Codebook& cb, std::span<const float> x) {
  UnitId best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < cb.k; ++c) {
    double d = 0.0;
    for (std::size_t j = 0; j < cb.dim; ++j) {
      const double diff = static_cast<double>(x[j]) - cb.centroids[c * cb.dim + j];
      d += diff * diff;
    }
    if (d < best_d) {
      best_d = d;
      best = static_cast<UnitId>(c);
    }
  }
  return best;
}

TEST(Collapse, WorkedExample) {
  EXPECT_EQ(collapse({{1, 1, 2, 2, 3, 3}}).units, (std::vector<UnitId>{1, 2, 3}));
  EXPECT_TRUE(collapse({{1, 1}}).collapsed);
  EXPECT_TRUE(collapse({}).empty());
  EXPECT_EQ(collapse({{1, 2, 1}}).units, (std::vector<UnitId>{1, 2, 1}));
}

TEST(Collapse, PropertiesOnRandomSequences) {
  Rng rng(21);
  for (int trial = 0; trial < 2000; ++trial) {
    const UnitSequence x{random_units(rng, 40, 4)};
    const UnitSequence c = collapse(x);
    EXPECT_EQ(collapse(c), c);
    EXPECT_FALSE(has_adjacent_repeats(c.units));
    EXPECT_LE(c.size(), x.size());
    // Re-expanding with random run lengths and collapsing again is lossless.
    std::vector<UnitId> expanded;
    for (UnitId u : c.units) expanded.insert(expanded.end(), 1 + rng.below(3), u);
    EXPECT_EQ(collapse({expanded}).units, c.units);
  }
}

TEST(Validate, RejectsOutOfRangeAndFalseCollapsedFlag) {
  EXPECT_NO_THROW(validate({{0, 3, 1}, true}, 4));
  EXPECT_THROW(validate({{0, 4}}, 4), ValidationError);
  EXPECT_THROW(validate({{-1}}, 4), ValidationError);
  EXPECT_THROW(validate({{2, 2}, true}, 4), ValidationError);
  EXPECT_NO_THROW(validate({{2, 2}, false}, 4));
}

TEST(Quantize, NearestCentroidAndTieRule) {
  Codebook cb;
  cb.k = 2;
  cb.dim = 2;
  cb.centroids = {0, 0, 1, 1};
  const auto q = quantize(cb, make_frames(2, {0.9f, 0.8f, 0.5f, 0.5f}));
  EXPECT_EQ(q.units, (std::vector<UnitId>{1, 0}));
  EXPECT_FALSE(q.collapsed);
  EXPECT_THROW(quantize(cb, make_frames(3, {0, 0, 0})), ValidationError);
}

TEST(Quantize, MatchesExhaustiveScan) {
  Rng rng(8);
  Codebook cb;
  cb.k = 17;
  cb.dim = 5;
  for (std::size_t i = 0; i < cb.k * cb.dim; ++i) cb.centroids.push_back(static_cast<float>(rng.below(3)));
  // Duplicated centroids force exact ties.
  std::copy_n(cb.centroids.begin(), cb.dim, cb.centroids.begin() + 9 * cb.dim);
  FrameSequence frames;
  frames.dim = cb.dim;
  for (int i = 0; i < 1000 * 5; ++i) frames.data.push_back(static_cast<float>(rng.below(5)) * 0.5f);
  const auto q = quantize(cb, frames);
  ASSERT_EQ(q.size(), 1000u);
  for (std::size_t t = 0; t < 1000; ++t) EXPECT_EQ(q.units[t], brute_force_nearest(cb, frames.frame(t)));
}

TEST(KMeans, OneDimensionalTwoClusters) {
  const auto r = kmeans_fit({make_frames(1, {0.0f, 0.2f, 10.0f, 10.2f})}, 2);
  std::vector<float> c = r.codebook.centroids;
  std::sort(c.begin(), c.end());
  EXPECT_NEAR(c[0], 0.1, 1e-6);
  EXPECT_NEAR(c[1], 10.1, 1e-5);
}

TEST(KMeans, SingleClusterIsTheMean) {
  const auto r = kmeans_fit({make_frames(2, {1, 2, 3, 4, 5, 9})}, 1);
  EXPECT_NEAR(r.codebook.centroids[0], 3.0, 1e-6);
  EXPECT_NEAR(r.codebook.centroids[1], 5.0, 1e-6);
}

TEST(KMeans, RejectsTooFewDistinctPoints) {
  try {
    kmeans_fit({make_frames(1, {1, 1, 1, 2})}, 3);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find('2'), std::string::npos) << e.what();
  }
  EXPECT_THROW(kmeans_fit({make_frames(1, {1})}, 0), ValidationError);
}

TEST(KMeans, InertiaNeverIncreasesAndFitIsDeterministic) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Rng rng(seed + 100);
    FrameSequence f;
    f.dim = 3;
    for (int i = 0; i < 600; ++i) f.data.push_back(static_cast<float>(rng.normal()));
    KMeansConfig config;
    config.seed = seed;
    const auto a = kmeans_fit({f}, 8, config);
    for (std::size_t i = 1; i < a.inertia_trace.size(); ++i) {
      EXPECT_LE(a.inertia_trace[i], a.inertia_trace[i - 1] * (1 + 1e-12));
    }
    const auto b = kmeans_fit({f}, 8, config);
    EXPECT_EQ(a.codebook, b.codebook);
    EXPECT_EQ(a.assignment, b.assignment);
    EXPECT_EQ(quantize(a.codebook, f).units, a.assignment);
  }
}

TEST(Subsample, KeepsRoundedCountInOrder) {
  FrameSequence f;
  f.dim = 1;
  for (int i = 0; i < 40; ++i) f.data.push_back(static_cast<float>(i));
  const auto s = subsample_frames({f}, 0.25, 3);
  ASSERT_EQ(s.size(), 10u);
  EXPECT_TRUE(std::is_sorted(s.data.begin(), s.data.end()));
  EXPECT_EQ(s, subsample_frames({f}, 0.25, 3));
  EXPECT_THROW(subsample_frames({f}, 0.0, 3), ValidationError);
}

TEST(CodebookIo, RoundTripsAndRejectsGarbage) {
  testing::TempDir dir;
  Codebook cb;
  cb.k = 3;
  cb.dim = 2;
  cb.centroids = {0.5f, -1.25f, 3.0f, 1e-7f, -0.0f, 42.0f};
  cb.seed = 9;
  cb.iterations = 12;
  cb.inertia = 1.5;
  write_codebook(cb, dir / "cb.bin");
  EXPECT_EQ(read_codebook(dir / "cb.bin"), cb);
  testing::write_file(dir / "bad.bin", "not a codebook\n");
  EXPECT_THROW(read_codebook(dir / "bad.bin"), ValidationError);
  EXPECT_THROW(read_codebook(dir / "missing.bin"), ValidationError);
}

Waveform tone(double hz, std::size_t samples, double phase = 0.0) {
  Waveform w;
  for (std::size_t i = 0; i < samples; ++i) {
    w.samples.push_back(static_cast<float>(
        0.5 * std::sin(2.0 * std::numbers::pi * hz * static_cast<double>(i) / 16000.0 + phase)));
  }
  return w;
}

std::size_t argmax_band(const FrameSequence& f, std::size_t t) {
  const auto row = f.frame(t);
  return static_cast<std::size_t>(std::max_element(row.begin(), row.end()) - row.begin());
}

bool band_contains(const std::vector<double>& edges, std::size_t band, double hz) {
  return edges[band] <= hz && hz <= edges[band + 2];
}

TEST(Frames, SilenceSitsAtTheFloor) {
  Waveform w;
  w.samples.assign(1600, 0.0f);
  const auto f = encode_frames(w);
  EXPECT_EQ(f.size(), 5u);
  for (float v : f.data) EXPECT_FLOAT_EQ(v, static_cast<float>(std::log(1e-10)));
}

TEST(Frames, FrameCountAndErrors) {
  EXPECT_TRUE(encode_frames(Waveform{}).empty());
  Waveform w = tone(500, 321);
  EXPECT_EQ(encode_frames(w).size(), 2u);
  w.sample_rate = 8000;
  EXPECT_THROW(encode_frames(w), ValidationError);
}

TEST(Frames, ToneLandsInItsBand) {
  const auto edges = band_edges({});
  for (double hz : {335.0, 1000.0, 2050.0, 3800.0}) {
    const auto f = encode_frames(tone(hz, 3200));
    for (std::size_t t = 1; t + 1 < f.size(); ++t) {
      EXPECT_TRUE(band_contains(edges, argmax_band(f, t), hz)) << hz << " Hz frame " << t;
    }
  }
}

TEST(Frames, ArgmaxSwitchesAtTheBoundaryFrame) {
  const auto edges = band_edges({});
  Waveform w = tone(600, 1600);
  const Waveform b = tone(2500, 1600);
  w.samples.insert(w.samples.end(), b.samples.begin(), b.samples.end());
  const auto f = encode_frames(w);
  ASSERT_EQ(f.size(), 10u);
  for (std::size_t t = 0; t < 10; ++t) {
    EXPECT_TRUE(band_contains(edges, argmax_band(f, t), t < 5 ? 600.0 : 2500.0)) << t;
  }
}

TEST(Frames, Deterministic) {
  const auto w = tone(777, 5000, 0.3);
  EXPECT_EQ(encode_frames(w), encode_frames(w));
}

}  // namespace
}  // namespace unitrans::units
