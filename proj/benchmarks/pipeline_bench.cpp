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

#include <vector>

#include <benchmark/benchmark.h>

#include "unitrans/common/random.hpp"
#include "unitrans/corpus/batching.hpp"
#include "unitrans/corpus/corpus.hpp"
#include "unitrans/decoding/search.hpp"
#include "unitrans/model/transformer.hpp"
#include "unitrans/synthesis/synthesizer.hpp"
#include "unitrans/training/adam.hpp"
#include "unitrans/training/loss.hpp"
#include "unitrans/units/frames.hpp"
#include "unitrans/units/kmeans.hpp"

namespace {

using namespace unitrans;

const corpus::CorpusBundle& bundle() {
  static const corpus::CorpusBundle b = [] {
    corpus::CorpusSpec spec;
    spec.seed = 7;
    return corpus::generate_corpus(spec);
  }();
  return b;
}

units::UnitSequence random_units(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  units::UnitSequence s;
  s.collapsed = true;
  while (s.units.size() < n) {
    const auto u = static_cast<units::UnitId>(rng.below(100));
    if (s.units.empty() || s.units.back() != u) s.units.push_back(u);
  }
  return s;
}

// One optimizer step of the desk model on a 2048-token batch.
void BM_TrainStep(benchmark::State& state) {
  const auto& b = bundle();
  const auto pairs = corpus::translation_pairs(corpus::filter_language(b.train, "hi"), b.vocab);
  const auto batches = corpus::batch_iterator(pairs, 2048, 1, 0);
  const auto& batch = batches.front();
  auto model = model::TranslationModel<float>::init(model::config_for(b.vocab), 1);
  auto adam = training::make_adam_state(model.parameters());
  std::uint64_t step = 0;
  for (auto _ : state) {
    numerics::Graph<float> g(numerics::GraphOptions{true, 1, ++step});
    const auto loss = training::label_smoothed_ce(g, model.build_logits(g, batch), batch.target_out, 0.2,
                                                  corpus::Vocabulary::kPad);
    g.forward();
    auto grads = g.backward(loss);
    training::clip_global_norm(grads, 1.0);
    training::adam_step(model.parameters(), grads, adam, 1e-4);
  }
  state.counters["tokens"] = static_cast<double>(batch.real_tokens());
}
BENCHMARK(BM_TrainStep)->Unit(benchmark::kMillisecond);

void BM_BeamDecode(benchmark::State& state) {
  const auto& b = bundle();
  const auto model = model::TranslationModel<float>::init(model::config_for(b.vocab), 1);
  const auto& ex = b.test.front();
  const auto source = b.vocab.tokenize(ex.source_text, ex.source_lang);
  decoding::DecodeConfig dc;
  dc.beam_size = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(decoding::beam_decode(model, source, dc));
}
BENCHMARK(BM_BeamDecode)->Arg(1)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_Quantize(benchmark::State& state) {
  Rng rng(3);
  units::Codebook cb;
  cb.k = 100;
  cb.dim = 64;
  for (std::size_t i = 0; i < cb.k * cb.dim; ++i) cb.centroids.push_back(static_cast<float>(rng.normal()));
  units::FrameSequence frames;
  frames.dim = cb.dim;
  for (std::size_t i = 0; i < 1000 * cb.dim; ++i) frames.data.push_back(static_cast<float>(rng.normal()));
  for (auto _ : state) benchmark::DoNotOptimize(units::quantize(cb, frames));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * 1000));
}
BENCHMARK(BM_Quantize);

void BM_Synthesize(benchmark::State& state) {
  const auto s = random_units(static_cast<std::size_t>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(synthesis::synthesize(s));
}
BENCHMARK(BM_Synthesize)->Arg(20)->Arg(60);

void BM_Analyze(benchmark::State& state) {
  const auto w = synthesis::synthesize(random_units(static_cast<std::size_t>(state.range(0)), 5));
  const synthesis::Analyzer analyzer;
  for (auto _ : state) benchmark::DoNotOptimize(analyzer(w));
}
BENCHMARK(BM_Analyze)->Arg(20)->Arg(60);

void BM_EncodeFrames(benchmark::State& state) {
  const auto w = synthesis::synthesize(random_units(60, 6));
  for (auto _ : state) benchmark::DoNotOptimize(units::encode_frames(w));
}
BENCHMARK(BM_EncodeFrames);

}  // namespace
