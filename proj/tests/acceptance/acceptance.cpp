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

// Acceptance suite: one PASS/FAIL line per criterion.
//
//   unitrans_acceptance [--criteria 1,2,...] [--workdir DIR] [--keep]
//
// Exit status is 0 only when every selected criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "CLI11.hpp"
#include "bleu_fixture.hpp"
#include "unitrans/common/error.hpp"
#include "unitrans/common/random.hpp"
#include "unitrans/corpus/batching.hpp"
#include "unitrans/corpus/corpus.hpp"
#include "unitrans/corpus/manifest.hpp"
#include "unitrans/decoding/search.hpp"
#include "unitrans/eval/bleu.hpp"
#include "unitrans/eval/pipeline.hpp"
#include "unitrans/model/checkpoint.hpp"
#include "unitrans/numerics/grad_check.hpp"
#include "unitrans/synthesis/synthesizer.hpp"
#include "unitrans/synthesis/wav.hpp"
#include "unitrans/training/trainer.hpp"
#include "unitrans/units/kmeans.hpp"

namespace fs = std::filesystem;
using namespace unitrans;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  bool ok() const { return failures_.empty(); }
  std::string summary() const {
    std::string s;
    for (std::size_t i = 0; i < failures_.size() && i < 3; ++i) s += (i ? "; " : "") + failures_[i];
    if (failures_.size() > 3) s += "; +" + std::to_string(failures_.size() - 3) + " more";
    return s;
  }

 private:
  std::vector<std::string> failures_;
};

std::string fmt(double v, int digits = 4) {
  std::ostringstream s;
  s.precision(digits);
  s << v;
  return s.str();
}

double median3(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Shared experiment setup ---------------------------------------------------

constexpr std::uint64_t kCorpusSeed = 7;

const corpus::CorpusBundle& desk_corpus() {
  static const corpus::CorpusBundle bundle = [] {
    corpus::CorpusSpec spec;
    spec.seed = kCorpusSeed;
    return corpus::generate_corpus(spec);
  }();
  return bundle;
}

// The desk-scale recipe used by every training criterion.
training::TrainingConfig desk_training(std::size_t steps, std::uint64_t seed) {
  training::TrainingConfig c;
  c.lr = 2e-3;
  c.warmup_steps = steps / 20;
  c.max_steps = steps;
  c.max_tokens = 2048;
  c.eval_every = 200;
  c.seed = seed;
  return c;
}

constexpr std::size_t kTranslationSteps = 2500;

std::vector<corpus::SequencePair> pairs_for(const std::vector<corpus::ParallelExample>& split,
                                            const std::string& lang) {
  return corpus::translation_pairs(corpus::filter_language(split, lang), desk_corpus().vocab);
}

double test_bleu(const model::TranslationModel<float>& m, const std::string& lang,
                 const eval::PipelineOptions& options = {}, eval::PipelineResult* out = nullptr) {
  const auto& b = desk_corpus();
  decoding::DecodeConfig dc;
  dc.beam_size = 5;
  eval::ModelUnits units(m, b.vocab, dc);
  eval::OracleRecognizer asr(b.lexicon, options.synth);
  auto r = eval::asr_bleu_pipeline(corpus::filter_language(b.test, lang), units, asr, b.tier_map(), options);
  const double score = r.report.languages.at(lang).bleu.bleu;
  if (out) *out = std::move(r);
  return score;
}

training::TrainResult train_language(const std::string& lang, std::size_t steps, std::uint64_t seed,
                                     const training::TrainOptions& options = {}) {
  const auto& b = desk_corpus();
  return training::train(pairs_for(b.train, lang), pairs_for(b.dev, lang),
                         model::TranslationModel<float>::init(model::config_for(b.vocab), seed),
                         desk_training(steps, seed), options);
}

// Criterion 1 ---------------------------------------------------------------

// Independent run-length reference.
std::vector<units::UnitId> run_heads(const std::vector<units::UnitId>& x) {
  std::vector<units::UnitId> out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i == 0 || x[i] != x[i - 1]) out.push_back(x[i]);
  }
  return out;
}

Outcome collapse_conformance() {
  const auto t0 = std::chrono::steady_clock::now();
  Check c;
  c.expect(units::collapse({{1, 1, 2, 2, 3, 3}}).units == std::vector<units::UnitId>{1, 2, 3},
           "worked example");
  Rng rng(derive_seed(1, "acceptance/collapse"));
  for (int i = 0; i < 10000; ++i) {
    std::vector<units::UnitId> x(rng.below(64));
    const std::size_t k = 1 + rng.below(8);
    for (auto& u : x) u = static_cast<units::UnitId>(rng.below(k));
    const auto once = units::collapse({x});
    if (units::collapse(once) != once) c.expect(false, "not idempotent");
    if (units::has_adjacent_repeats(once.units)) c.expect(false, "adjacent repeat");
    if (!once.collapsed) c.expect(false, "flag unset");
    if (once.units != run_heads(x)) c.expect(false, "differs from run-length reference");
  }
  const double s = seconds_since(t0);
  c.expect(s < 1.0, "runtime " + fmt(s) + " s");
  return {c.ok(), c.ok() ? "10000 sequences in " + fmt(s, 3) + " s" : c.summary()};
}

// Criterion 2 ---------------------------------------------------------------

Outcome quantizer_exactness() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(derive_seed(2, "acceptance/quantize"));
  units::Codebook cb;
  cb.k = 100;
  cb.dim = 16;
  // Coarse integer grids make exact distance ties common.
  for (std::size_t i = 0; i < cb.k * cb.dim; ++i) cb.centroids.push_back(static_cast<float>(rng.below(3)));
  for (std::size_t dup = 0; dup < 10; ++dup) {
    std::copy_n(cb.centroids.begin() + dup * cb.dim, cb.dim, cb.centroids.begin() + (50 + dup) * cb.dim);
  }
  units::FrameSequence frames;
  frames.dim = cb.dim;
  for (std::size_t i = 0; i < 1000 * cb.dim; ++i) frames.data.push_back(static_cast<float>(rng.below(5)) * 0.5f);

  const auto q = units::quantize(cb, frames);
  std::size_t agree = 0, ties = 0;
  for (std::size_t t = 0; t < 1000; ++t) {
    double best = std::numeric_limits<double>::infinity();
    units::UnitId arg = 0;
    std::size_t at_best = 0;
    for (std::size_t c = 0; c < cb.k; ++c) {
      double d = 0.0;
      for (std::size_t j = 0; j < cb.dim; ++j) {
        const double diff = static_cast<double>(frames.data[t * cb.dim + j]) - cb.centroids[c * cb.dim + j];
        d += diff * diff;
      }
      if (d < best) {
        best = d;
        arg = static_cast<units::UnitId>(c);
        at_best = 1;
      } else if (d == best) {
        ++at_best;
      }
    }
    agree += q.units[t] == arg;
    ties += at_best > 1;
  }
  const double s = seconds_since(t0);
  Check c;
  c.expect(q.units.size() == 1000, "length");
  c.expect(agree == 1000, std::to_string(agree) + "/1000 agree");
  c.expect(s < 1.0, "runtime " + fmt(s) + " s");
  return {c.ok(), std::to_string(agree) + "/1000 agree, " + std::to_string(ties) + " tied frames, " + fmt(s, 3) + " s"};
}

// Criterion 3 ---------------------------------------------------------------

Outcome kmeans_quality() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(derive_seed(3, "acceptance/blobs"));
  constexpr std::size_t kDim = 8, kPoints = 1000, kBlobs = 4;
  std::vector<std::vector<double>> centers(kBlobs, std::vector<double>(kDim));
  for (std::size_t b = 0; b < kBlobs; ++b) {
    for (std::size_t j = 0; j < kDim; ++j) centers[b][j] = j == b ? 10.0 : 0.0;
  }
  units::FrameSequence frames;
  frames.dim = kDim;
  std::vector<std::size_t> labels;
  for (std::size_t i = 0; i < kPoints; ++i) {
    const std::size_t b = i % kBlobs;
    labels.push_back(b);
    for (std::size_t j = 0; j < kDim; ++j) frames.data.push_back(static_cast<float>(centers[b][j] + rng.normal()));
  }
  units::KMeansConfig config;
  config.seed = 0;
  const auto r = units::kmeans_fit({frames}, kBlobs, config);

  // Purity: each cluster counts its majority label.
  std::vector<std::vector<std::size_t>> counts(kBlobs, std::vector<std::size_t>(kBlobs, 0));
  for (std::size_t i = 0; i < kPoints; ++i) ++counts[static_cast<std::size_t>(r.assignment[i])][labels[i]];
  std::size_t majority = 0;
  for (const auto& row : counts) majority += *std::max_element(row.begin(), row.end());
  const double purity = static_cast<double>(majority) / kPoints;
  bool monotone = true;
  for (std::size_t i = 1; i < r.inertia_trace.size(); ++i) monotone &= r.inertia_trace[i] <= r.inertia_trace[i - 1];
  const double s = seconds_since(t0);
  Check c;
  c.expect(purity >= 0.99, "purity " + fmt(purity));
  c.expect(monotone, "inertia increased");
  c.expect(s < 5.0, "runtime " + fmt(s) + " s");
  return {c.ok(), "purity " + fmt(purity) + ", " + std::to_string(r.inertia_trace.size()) +
                      " monotone iterations, " + fmt(s, 3) + " s"};
}

// Criterion 4 ---------------------------------------------------------------

Outcome gradient_correctness() {
  const auto t0 = std::chrono::steady_clock::now();
  const corpus::Vocabulary vocab({"aa", "bb"}, {"w0", "w1", "w2", "w3", "w4", "w5"}, 8);
  model::ModelConfig base;
  base.layers_enc = 2;
  base.layers_dec = 2;
  base.d_model = 8;
  base.heads = 2;
  base.d_ff = 16;
  base.max_positions = 16;
  const auto config = model::config_for(vocab, base);
  const auto init = model::TranslationModel<double>::init(config, 0);

  const corpus::TokenId u0 = vocab.unit_begin();
  const std::vector<corpus::SequencePair> pairs{{"a", {5, 7, 9, 10, 2}, {u0, u0 + 3, u0 + 1}},
                                                {"b", {6, 8, 11, 2}, {u0 + 7, u0 + 2}}};
  const auto batch = corpus::make_batch({&pairs[0], &pairs[1]});

  std::optional<model::TranslationModel<double>> live;
  numerics::LossBuilder build = [&](numerics::Graph<double>& g, const numerics::ParameterSet<double>& p) {
    live = model::TranslationModel<double>::from_parameters(config, p);
    return training::label_smoothed_ce(g, live->build_logits(g, batch), batch.target_out, 0.2,
                                       corpus::Vocabulary::kPad);
  };
  auto params = init.parameters();
  numerics::GradCheckOptions options;
  options.max_coords_per_tensor = 50;
  options.step = 1e-4;
  // Training mode: dropout masks are fixed by (seed, step), so they hold
  // still under perturbation.
  options.graph = numerics::GraphOptions{true, 99, 1};
  const auto r = numerics::grad_check(build, params, options);
  const double s = seconds_since(t0);
  Check c;
  c.expect(r.max_relative_error < 1e-3, "max relative error " + fmt(r.max_relative_error) + " at " +
                                            r.worst_parameter + "[" + std::to_string(r.worst_index) + "] (analytic " +
                                            fmt(r.analytic, 10) + ", numeric " + fmt(r.numeric, 10) + ")");
  c.expect(s < 120.0, "runtime " + fmt(s) + " s");
  const std::string scope = " over " + std::to_string(r.coordinates_checked) + " coordinates in " +
                            std::to_string(params.size()) + " tensors, " + fmt(s, 3) + " s";
  return {c.ok(), (c.ok() ? "max relative error " + fmt(r.max_relative_error, 3) : c.summary()) + scope};
}

// Criterion 5 ---------------------------------------------------------------

Outcome loss_optimizer_fixtures() {
  Check c;
  for (std::size_t v : {2u, 10u, 708u}) {
    numerics::Tensor<double> uniform({4, v});
    const double loss = training::label_smoothed_ce_value(uniform, {1, 0, 1, 1}, 0.2, 0);
    c.expect(std::abs(loss - std::log(static_cast<double>(v))) <= 1e-9, "uniform V=" + std::to_string(v));
  }
  numerics::Tensor<double> two({1, 2}, {std::log(3.0), 0.0});
  const double want = -0.9 * std::log(0.75) - 0.1 * std::log(0.25);
  const double got = training::label_smoothed_ce_value(two, {0}, 0.2, -1);
  c.expect(std::abs(got - want) <= 1e-9, "V=2 fixture " + fmt(got, 12));

  numerics::ParameterSet<double> p{{"w", numerics::Tensor<double>::scalar(0.0)}};
  auto state = training::make_adam_state(p);
  training::adam_step(p, {{"w", numerics::Tensor<double>::scalar(1.0)}}, state, 3e-5);
  const double step = -p.at("w").item();
  c.expect(std::abs(step - 3e-5 / (1.0 + 1e-6)) <= 1e-9, "adam first step " + fmt(step, 12));

  training::TrainingConfig sched;
  sched.max_steps = 2000;
  c.expect(training::poly_lr(0, sched) == 3e-5, "poly_lr(0)");
  c.expect(training::poly_lr(2000, sched) == 0.0, "poly_lr(total)");
  c.expect(training::poly_lr(1000, sched) == 1.5e-5, "poly_lr(total/2)");
  return {c.ok(), c.ok() ? "ln V, V=2, Adam and poly_lr fixtures exact" : c.summary()};
}

// Criterion 6 ---------------------------------------------------------------

Outcome overfit_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto& b = desk_corpus();
  const auto all = corpus::filter_language(b.train, "hi");
  const std::vector<corpus::ParallelExample> examples(all.begin(), all.begin() + 64);
  const auto pairs = corpus::translation_pairs(examples, b.vocab);
  auto config = desk_training(1000, 6);
  const auto r = training::train(pairs, {}, model::TranslationModel<float>::init(model::config_for(b.vocab), 6),
                                 config);
  const auto acc = training::teacher_forced_accuracy(r.model, pairs, config.max_tokens);
  std::size_t exact = 0;
  for (const auto& ex : examples) {
    const auto d = decoding::greedy_decode(r.model, b.vocab.tokenize(ex.source_text, ex.source_lang));
    exact += d.units == ex.target_units;
  }
  const double s = seconds_since(t0);
  Check c;
  c.expect(r.steps <= 2000, "steps");
  c.expect(acc.correct == acc.total, "accuracy " + fmt(acc.rate()));
  c.expect(exact == 64, std::to_string(exact) + "/64 exact");
  c.expect(s < 300.0, "runtime " + fmt(s) + " s");
  return {c.ok(), std::to_string(r.steps) + " steps, accuracy " + std::to_string(acc.correct) + "/" +
                      std::to_string(acc.total) + ", greedy exact " + std::to_string(exact) + "/64, " +
                      fmt(s, 3) + " s"};
}

// Criterion 7 ---------------------------------------------------------------

Outcome synthesis_round_trip() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(derive_seed(7, "acceptance/synth"));
  const synthesis::Analyzer analyzer;
  std::size_t clean = 0, noisy = 0;
  for (int i = 0; i < 1000; ++i) {
    units::UnitSequence s;
    s.collapsed = true;
    const std::size_t n = 1 + rng.below(60);
    while (s.units.size() < n) {
      const auto u = static_cast<units::UnitId>(rng.below(100));
      if (s.units.empty() || s.units.back() != u) s.units.push_back(u);
    }
    auto w = synthesis::synthesize(s);
    clean += analyzer(w) == s;
    double power = 0.0;
    for (float x : w.samples) power += static_cast<double>(x) * x;
    const double sigma = std::sqrt(power / static_cast<double>(w.samples.size()) / 100.0);
    for (auto& x : w.samples) x += static_cast<float>(sigma * rng.normal());
    noisy += analyzer(w) == s;
  }
  const double s = seconds_since(t0);
  Check c;
  c.expect(clean == 1000, "clean " + std::to_string(clean));
  c.expect(noisy == 1000, "20 dB " + std::to_string(noisy));
  c.expect(s < 30.0, "runtime " + fmt(s) + " s");
  return {c.ok(), "clean " + std::to_string(clean) + "/1000, 20 dB " + std::to_string(noisy) + "/1000, " +
                      fmt(s, 3) + " s"};
}

// Criterion 8 ---------------------------------------------------------------

Outcome harness_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto& b = desk_corpus();
  eval::OracleUnits units;
  eval::OracleRecognizer asr(b.lexicon, {});
  const auto r = eval::asr_bleu_pipeline(b.test, units, asr, b.tier_map());
  Check c;
  std::string detail;
  for (const auto& [lang, res] : r.report.languages) {
    c.expect(std::abs(res.bleu.bleu - 100.0) <= 1e-6, lang + " " + fmt(res.bleu.bleu, 10));
    detail += lang + "=" + fmt(res.bleu.bleu, 10) + " ";
  }
  c.expect(r.report.languages.size() == b.languages.size(), "language count");
  const double s = seconds_since(t0);
  c.expect(s < 60.0, "runtime " + fmt(s) + " s");
  return {c.ok(), detail + "(" + std::to_string(r.examples.size()) + " examples, " + fmt(s, 3) + " s)"};
}

// Criteria 9 and 12 ---------------------------------------------------------

struct TranslationRun {
  double bleu = 0.0;
  double seconds = 0.0;
  fs::path dir;
};

// Trains the high-resource language and writes checkpoint, units, WAVs and
// reports into `dir`.
TranslationRun translation_run(const fs::path& dir, std::uint64_t seed) {
  const auto t0 = std::chrono::steady_clock::now();
  fs::create_directories(dir);
  training::TrainOptions opts;
  opts.checkpoint_dir = dir / "checkpoints";
  const auto trained = train_language("hi", kTranslationSteps, seed, opts);
  eval::PipelineOptions popts;
  popts.wav_dir = dir / "wav";
  eval::PipelineResult result;
  TranslationRun run;
  run.bleu = test_bleu(trained.model, "hi", popts, &result);
  eval::write_pipeline_outputs(result, dir / "report");
  std::ofstream units(dir / "units.txt");
  for (const auto& ex : result.examples) units << ex.id << '\t' << corpus::join_units(ex.units.units) << '\n';
  run.seconds = seconds_since(t0);
  run.dir = dir;
  return run;
}

std::optional<TranslationRun> first_translation_run;

Outcome end_to_end_translation(const fs::path& work) {
  const auto run = translation_run(work / "translation-a", 1);
  first_translation_run = run;
  Check c;
  c.expect(run.bleu >= 80.0, "BLEU " + fmt(run.bleu));
  c.expect(run.seconds < 1800.0, "runtime " + fmt(run.seconds) + " s");
  return {c.ok(), "test BLEU " + fmt(run.bleu) + " on 200 pairs after " + std::to_string(kTranslationSteps) +
                      " steps, " + fmt(run.seconds, 4) + " s"};
}

std::map<std::string, std::uint64_t> tree_digest(const fs::path& root) {
  std::map<std::string, std::uint64_t> out;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (!entry.is_regular_file()) continue;
    std::ifstream in(entry.path(), std::ios::binary);
    const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    out[fs::relative(entry.path(), root).generic_string()] = fnv1a(bytes);
  }
  return out;
}

Outcome determinism(const fs::path& work) {
  const TranslationRun a = first_translation_run ? *first_translation_run : translation_run(work / "translation-a", 1);
  const TranslationRun b = translation_run(work / "translation-b", 1);
  const auto da = tree_digest(a.dir), db = tree_digest(b.dir);
  Check c;
  std::size_t wavs = 0, checkpoints = 0;
  for (const auto& [name, digest] : da) {
    const auto it = db.find(name);
    c.expect(it != db.end() && it->second == digest, name + " differs");
    wavs += name.rfind("wav/", 0) == 0;
    checkpoints += name.rfind("checkpoints/", 0) == 0;
  }
  c.expect(da.size() == db.size(), "file sets differ");
  c.expect(checkpoints > 0 && wavs == 200, "artifacts missing");
  c.expect(da.count("units.txt") && da.count("report/report.json"), "units or report missing");
  return {c.ok(), c.ok() ? std::to_string(da.size()) + " files identical (" + std::to_string(checkpoints) +
                               " checkpoint, " + std::to_string(wavs) + " WAVs, units, reports)"
                         : c.summary()};
}

// Criterion 10 --------------------------------------------------------------

constexpr std::size_t kTierSteps = 2000;

Outcome tier_trend() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto& b = desk_corpus();
  std::map<corpus::Tier, std::vector<double>> scores;
  std::map<corpus::Tier, std::string> tag;
  for (const auto& lang : b.languages) tag[lang.tier] = lang.tag;
  for (std::uint64_t seed : {1, 2, 3}) {
    for (const auto& [tier, lang] : tag) {
      const auto r = train_language(lang, kTierSteps, seed);
      scores[tier].push_back(test_bleu(r.model, lang));
    }
  }
  const double high = median3(scores[corpus::Tier::kHigh]);
  const double medium = median3(scores[corpus::Tier::kMedium]);
  const double low = median3(scores[corpus::Tier::kLow]);
  Check c;
  c.expect(high > medium && medium > low, "ordering violated");
  std::string detail = "median BLEU high " + fmt(high) + " > medium " + fmt(medium) + " > low " + fmt(low) + " [";
  for (const auto& [tier, v] : scores) {
    detail += std::string(corpus::tier_name(tier)) + ":";
    for (double x : v) detail += " " + fmt(x);
    detail += tier == corpus::Tier::kLow ? "" : "; ";
  }
  detail += "], " + fmt(seconds_since(t0), 4) + " s";
  return {c.ok(), detail};
}

// Criterion 11 --------------------------------------------------------------

constexpr std::size_t kTransferSteps = 2000;
constexpr std::size_t kPretrainSteps = 2000;
const std::string kTransferLang = "md";
const std::vector<std::string> kPretrainLangs = {"md", "hi"};

Outcome pretraining_transfer() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto& b = desk_corpus();
  const auto train = pairs_for(b.train, kTransferLang);
  const auto dev = pairs_for(b.dev, kTransferLang);
  const auto config = model::config_for(b.vocab);
  std::vector<double> random_steps, pretrained_steps;
  std::string detail;
  for (std::uint64_t seed : {1, 2, 3}) {
    auto tc = desk_training(kTransferSteps, seed);
    tc.eval_every = 100;
    const auto scratch = training::train(train, dev, model::TranslationModel<float>::init(config, seed), tc);
    const double threshold = scratch.dev.back().loss;

    auto pc = desk_training(kPretrainSteps, seed);
    pc.eval_every = kPretrainSteps;
    const auto pre = training::pretrain(b, kPretrainLangs, model::TranslationModel<float>::init(config, seed), pc);

    training::TrainOptions stop;
    stop.stop_dev_loss = threshold;
    const auto tuned = training::train(train, dev, pre.model, tc, stop);
    const auto reached = tuned.first_step_at_or_below(threshold);
    // A run that never reaches the threshold counts one step past the budget.
    const double steps = reached ? static_cast<double>(*reached) : static_cast<double>(kTransferSteps + 1);
    random_steps.push_back(static_cast<double>(*scratch.first_step_at_or_below(threshold)));
    pretrained_steps.push_back(steps);
    detail += "seed " + std::to_string(seed) + ": threshold " + fmt(threshold) + " reached at " +
              (reached ? std::to_string(*reached) : "never") + "; ";
  }
  const double med_random = median3(random_steps), med_pre = median3(pretrained_steps);
  Check c;
  c.expect(med_pre < med_random, "pretrained median " + fmt(med_pre) + " not below " + fmt(med_random));
  return {c.ok(), "median steps pretrained " + fmt(med_pre) + " vs random " + fmt(med_random) + " (" + detail +
                      fmt(seconds_since(t0), 4) + " s)"};
}

// Criterion 13 --------------------------------------------------------------

Outcome bleu_fixtures() {
  Check c;
  const auto& refs = testing::degradation_references();
  c.expect(eval::bleu(refs, refs).bleu == 100.0, "identity");
  // Hand count: p1 = 1/4, p2..p4 = 0 floored at 1e-9, bp = 1.
  const double pinned = 0.000013;
  const auto fixture = eval::bleu({"the the the the"}, {"the cat sat"});
  c.expect(std::abs(fixture.bleu - pinned) < 5e-7, "pinned fixture " + fmt(fixture.bleu, 10));
  c.expect(fixture.precisions[0] == 0.25, "p1");
  // p1 = 5/6, p2 = 3/5, p3 = 1/4, p4 floored.
  const double pinned2 = 0.33437015;
  const auto fixture2 = eval::bleu({"the cat sat on the mat"}, {"the cat is on the mat"});
  c.expect(std::abs(fixture2.bleu - pinned2) < 5e-7, "second fixture " + fmt(fixture2.bleu, 10));
  double prev = 101.0;
  std::string trail;
  for (std::size_t k = 0; k <= 10; ++k) {
    const double v = eval::bleu(testing::corrupt_words(refs, k), refs).bleu;
    c.expect(v <= prev, "degradation step " + std::to_string(k) + " increased");
    prev = v;
    trail += fmt(v, 3) + (k < 10 ? " " : "");
  }
  return {c.ok(), c.ok() ? "identity 100, fixtures " + fmt(fixture.bleu, 6) + " and " + fmt(fixture2.bleu, 6) +
                               ", degradation " + trail
                         : c.summary()};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"unitrans acceptance suite"};
  std::string criteria_arg = "1,2,3,4,5,6,7,8,9,10,11,12,13";
  std::string workdir;
  bool keep = false;
  app.add_option("--criteria", criteria_arg, "Comma-separated criterion numbers");
  app.add_option("--workdir", workdir, "Directory for training artifacts (default: a fresh temp dir)");
  app.add_flag("--keep", keep, "Keep the work directory");
  CLI11_PARSE(app, argc, argv);

  std::set<int> selected;
  for (const auto& field : CLI::detail::split(criteria_arg, ',')) {
    try {
      const int n = std::stoi(field);
      if (n < 1 || n > 13) throw std::out_of_range(field);
      selected.insert(n);
    } catch (const std::exception&) {
      std::cerr << "unitrans_acceptance: bad criterion '" << field << "'\n";
      return 1;
    }
  }

  const bool temp = workdir.empty();
  const fs::path work = temp ? fs::temp_directory_path() / ("unitrans-acceptance-" + std::to_string(::getpid()))
                             : fs::path(workdir);
  fs::create_directories(work);

  const std::map<int, std::pair<std::string, std::function<Outcome()>>> table{
      {1, {"collapse conformance", collapse_conformance}},
      {2, {"quantizer exactness", quantizer_exactness}},
      {3, {"k-means quality", kmeans_quality}},
      {4, {"gradient correctness", gradient_correctness}},
      {5, {"loss/optimizer fixtures", loss_optimizer_fixtures}},
      {6, {"overfit oracle", overfit_oracle}},
      {7, {"synthesis round trip", synthesis_round_trip}},
      {8, {"harness oracle", harness_oracle}},
      {9, {"end-to-end translation", [&] { return end_to_end_translation(work); }}},
      {10, {"resource-tier trend", tier_trend}},
      {11, {"pretraining transfer", pretraining_transfer}},
      {12, {"determinism", [&] { return determinism(work); }}},
      {13, {"BLEU fixtures", bleu_fixtures}},
  };

  bool all = true;
  for (int n : selected) {
    const auto& [name, fn] = table.at(n);
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all &= o.pass;
    std::printf("%s criterion %d (%s): %s\n", o.pass ? "PASS" : "FAIL", n, name.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  if (temp && !keep) {
    std::error_code ec;
    fs::remove_all(work, ec);
  }
  return all ? 0 : 1;
}
