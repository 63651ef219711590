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

#include "commands.hpp"

#include <algorithm>
#include <iomanip>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "settings.hpp"
#include "unitrans/common/error.hpp"
#include "unitrans/common/random.hpp"
#include "unitrans/corpus/batching.hpp"
#include "unitrans/corpus/corpus.hpp"
#include "unitrans/corpus/manifest.hpp"
#include "unitrans/decoding/search.hpp"
#include "unitrans/eval/pipeline.hpp"
#include "unitrans/model/checkpoint.hpp"
#include "unitrans/synthesis/synthesizer.hpp"
#include "unitrans/synthesis/wav.hpp"
#include "unitrans/training/trainer.hpp"
#include "unitrans/units/frames.hpp"
#include "unitrans/units/kmeans.hpp"

namespace unitrans::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

json run_header(const std::string& command) { return {{"command", command}, {"version", kVersion}}; }

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<corpus::ParallelExample> select_languages(const corpus::CorpusBundle& bundle,
                                                      const std::vector<corpus::ParallelExample>& split,
                                                      const std::vector<std::string>& langs) {
  if (langs.empty()) return split;
  std::vector<corpus::ParallelExample> out;
  for (const auto& lang : langs) {
    bundle.language(lang);
    for (auto& ex : corpus::filter_language(split, lang)) out.push_back(std::move(ex));
  }
  return out;
}

const std::vector<corpus::ParallelExample>& split_of(const corpus::CorpusBundle& bundle, const std::string& name) {
  if (name == "train") return bundle.train;
  if (name == "dev") return bundle.dev;
  if (name == "test") return bundle.test;
  throw UsageError("unknown split '" + name + "' (expected train, dev or test)");
}

std::vector<fs::path> wav_files(const fs::path& dir) {
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".wav") out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  if (out.empty()) throw ValidationError("no .wav files in " + dir.string());
  return out;
}

/// Audio for unit discovery: WAVs from a directory, or synthesized targets
/// of a corpus split.
struct AudioSource {
  std::optional<std::string> audio_dir;
  std::optional<std::string> corpus_dir;
  std::string split = "train";
  std::size_t max_examples = 0;

  void add_options(CLI::App& app) {
    auto* a = app.add_option("--audio-dir", audio_dir, "Directory of 16-bit mono .wav files");
    auto* c = app.add_option("--corpus", corpus_dir, "Corpus directory; its target units are synthesized");
    a->excludes(c);
    app.add_option("--split", split, "Corpus split used with --corpus")->capture_default_str();
    app.add_option("--max-examples", max_examples, "Use at most this many corpus examples (0 = all)")
        ->capture_default_str();
  }

  void require() const {
    if (!audio_dir && !corpus_dir) throw UsageError("one of --audio-dir or --corpus is required");
  }

  /// (id, waveform) pairs plus, for corpus input, the examples themselves.
  std::vector<std::pair<std::string, Waveform>> load(std::vector<corpus::ParallelExample>* examples) const {
    std::vector<std::pair<std::string, Waveform>> out;
    if (audio_dir) {
      for (const auto& path : wav_files(*audio_dir)) out.emplace_back(path.stem().string(), synthesis::read_wav(path));
      return out;
    }
    const auto bundle = corpus::load_corpus(*corpus_dir);
    auto chosen = split_of(bundle, split);
    if (max_examples > 0 && chosen.size() > max_examples) chosen.resize(max_examples);
    synthesis::SynthConfig synth;
    synth.num_units = bundle.spec.num_units;
    for (const auto& ex : chosen) out.emplace_back(ex.id, synthesis::synthesize(ex.target_units, synth));
    if (examples) *examples = std::move(chosen);
    return out;
  }

  json describe() const {
    if (audio_dir) return {{"audio_dir", *audio_dir}};
    return {{"corpus", *corpus_dir}, {"split", split}, {"max_examples", max_examples}};
  }
};

// corpus-gen -----------------------------------------------------------------

Command corpus_gen(CLI::App& root) {
  struct State {
    Settings settings;
    std::string out;
  };
  auto s = std::make_shared<State>();
  auto* app = root.add_subcommand("corpus-gen", "Generate a synthetic multilingual text-to-unit corpus");
  app->add_option("--out", s->out, "Output directory")->required();
  s->settings.add_config_option(*app);
  s->settings.add_flags(*app, "", {"seed"}, "Corpus");
  s->settings.add_flags(*app, "", corpus_keys(), "Corpus");
  return {app, [s] {
            s->settings.check_prefixes({""});
            const auto spec = corpus_spec(s->settings.with_prefix(""));
            const auto bundle = corpus::generate_corpus(spec);
            corpus::save_corpus(bundle, s->out);
            auto run = run_header("corpus-gen");
            run["seed"] = spec.seed;
            run["corpus_spec"] = corpus::format_corpus_spec(spec);
            run["sizes"] = {{"train", bundle.train.size()}, {"dev", bundle.dev.size()}, {"test", bundle.test.size()}};
            write_run_json(s->out, run);
          }};
}

// units-fit ------------------------------------------------------------------

Command units_fit(CLI::App& root) {
  struct State {
    AudioSource source;
    std::string out;
    std::uint64_t seed = 0;
    std::size_t k = 100;
    units::KMeansConfig kmeans;
    double sample_ratio = 1.0;
  };
  auto s = std::make_shared<State>();
  auto* app = root.add_subcommand("units-fit", "Fit a k-means unit codebook on filterbank frames");
  app->add_option("--out", s->out, "Output directory (receives codebook.bin)")->required();
  app->add_option("--seed", s->seed, "Global seed")->capture_default_str();
  app->add_option("--k", s->k, "Number of units")->capture_default_str();
  app->add_option("--max-iters", s->kmeans.max_iters, "Lloyd iteration cap")->capture_default_str();
  app->add_option("--tol", s->kmeans.tol, "Centroid movement tolerance")->capture_default_str();
  app->add_option("--sample-ratio", s->sample_ratio, "Fraction of frames used for fitting")
      ->capture_default_str();
  s->source.add_options(*app);
  return {app, [s] {
            s->source.require();
            if (!(s->sample_ratio > 0.0 && s->sample_ratio <= 1.0)) {
              throw ValidationError("--sample-ratio must be in (0, 1]");
            }
            std::vector<units::FrameSequence> frames;
            for (const auto& [id, wave] : s->source.load(nullptr)) frames.push_back(units::encode_frames(wave));
            if (s->sample_ratio < 1.0) {
              frames = {units::subsample_frames(frames, s->sample_ratio, derive_seed(s->seed, "units-fit/subsample"))};
            }
            std::size_t total = 0;
            for (const auto& f : frames) total += f.size();
            auto config = s->kmeans;
            config.seed = derive_seed(s->seed, "units-fit/kmeans");
            const auto fit = units::kmeans_fit(frames, s->k, config);
            fs::create_directories(s->out);
            units::write_codebook(fit.codebook, fs::path(s->out) / "codebook.bin");
            auto run = run_header("units-fit");
            run["seed"] = s->seed;
            run["input"] = s->source.describe();
            run["kmeans"] = {{"k", s->k}, {"max_iters", s->kmeans.max_iters}, {"tol", s->kmeans.tol},
                             {"sample_ratio", s->sample_ratio}};
            run["frames"] = total;
            run["iterations"] = fit.codebook.iterations;
            run["inertia"] = fit.codebook.inertia;
            write_run_json(s->out, run);
          }};
}

// units-encode ---------------------------------------------------------------

Command units_encode(CLI::App& root) {
  struct State {
    AudioSource source;
    std::string codebook;
    std::string out;
  };
  auto s = std::make_shared<State>();
  s->source.split = "test";
  auto* app = root.add_subcommand("units-encode", "Quantize audio to collapsed unit sequences");
  app->add_option("--codebook", s->codebook, "Codebook file from units-fit")->required();
  app->add_option("--out", s->out, "Output directory")->required();
  s->source.add_options(*app);
  return {app, [s] {
            s->source.require();
            const auto codebook = units::read_codebook(s->codebook);
            std::vector<corpus::ParallelExample> examples;
            const auto audio = s->source.load(&examples);
            std::vector<units::UnitSequence> encoded;
            for (const auto& [id, wave] : audio) {
              encoded.push_back(units::collapse(units::quantize(codebook, units::encode_frames(wave))));
            }
            fs::create_directories(s->out);
            std::string written;
            if (s->source.corpus_dir) {
              for (std::size_t i = 0; i < examples.size(); ++i) examples[i].target_units = encoded[i];
              written = s->source.split + ".tsv";
              corpus::write_manifest(examples, fs::path(s->out) / written);
            } else {
              written = "units.tsv";
              std::ofstream out(fs::path(s->out) / written, std::ios::binary);
              for (std::size_t i = 0; i < audio.size(); ++i) {
                out << audio[i].first << '\t' << corpus::join_units(encoded[i].units) << '\n';
              }
            }
            auto run = run_header("units-encode");
            run["seed"] = codebook.seed;
            run["codebook"] = s->codebook;
            run["input"] = s->source.describe();
            run["output"] = written;
            run["sequences"] = encoded.size();
            write_run_json(s->out, run);
          }};
}

// pretrain / train -----------------------------------------------------------

struct TrainingState {
  Settings settings;
  std::string corpus_dir;
  std::string langs;
  std::string out;

  void add_common(CLI::App& app, bool with_noise) {
    app.add_option("--corpus", corpus_dir, "Corpus directory from corpus-gen")->required();
    app.add_option("--out", out, "Output directory (checkpoints, metrics.jsonl, run.json)")->required();
    settings.add_config_option(app);
    settings.add_flags(app, "", {"seed"}, "Training");
    settings.add_flags(app, "", training_keys(), "Training");
    settings.add_flags(app, "model.", model_keys(), "Model");
    if (with_noise) settings.add_flags(app, "noise.", noise_keys(), "Noise");
  }

  training::TrainingConfig training_config() const {
    training::TrainingConfig c;
    apply_training(c, settings.with_prefix(""));
    c.validate();
    return c;
  }

  model::ModelConfig model_config(const corpus::Vocabulary& vocab) const {
    model::ModelConfig base;
    apply_model(base, settings.with_prefix("model."));
    return model::config_for(vocab, base);
  }
};

void finish_training(const TrainingState& s, json run, const training::TrainResult& r) {
  run["steps"] = r.steps;
  if (!r.log.empty()) run["final_loss"] = r.log.back().loss;
  if (!r.dev.empty()) run["final_dev_loss"] = r.dev.back().loss;
  run["checkpoint"] = "final.bin";
  write_run_json(s.out, run);
}

Command pretrain(CLI::App& root) {
  auto s = std::make_shared<TrainingState>();
  auto* app = root.add_subcommand("pretrain", "Denoising pretraining on corpus source text");
  s->add_common(*app, true);
  app->add_option("--languages", s->langs, "Comma-separated language tags (default: all)");
  return {app, [s] {
            s->settings.check_prefixes({"", "model.", "noise."});
            const auto bundle = corpus::load_corpus(s->corpus_dir);
            const auto tc = s->training_config();
            const auto mc = s->model_config(bundle.vocab);
            training::NoiseConfig noise;
            apply_noise(noise, s->settings.with_prefix("noise."));
            auto langs = split_list(s->langs);
            if (langs.empty()) {
              for (const auto& l : bundle.languages) langs.push_back(l.tag);
            }
            fs::create_directories(s->out);
            std::ofstream metrics(fs::path(s->out) / "metrics.jsonl", std::ios::binary);
            training::TrainOptions opts;
            opts.metrics = &metrics;
            opts.checkpoint_dir = fs::path(s->out);
            const auto r = training::pretrain(
                bundle, langs, model::TranslationModel<float>::init(mc, derive_seed(tc.seed, "model-init")), tc,
                noise, opts);
            auto run = run_header("pretrain");
            run["seed"] = tc.seed;
            run["corpus"] = s->corpus_dir;
            run["languages"] = langs;
            run["training"] = tc;
            run["model"] = mc;
            run["noise"] = to_json(noise);
            finish_training(*s, run, r);
          }};
}

Command train(CLI::App& root) {
  struct State : TrainingState {
    std::optional<std::string> init;
  };
  auto s = std::make_shared<State>();
  auto* app = root.add_subcommand("train", "Train text-to-unit translation");
  s->add_common(*app, false);
  app->add_option("--lang", s->langs, "Comma-separated source languages (default: all)");
  app->add_option("--init", s->init, "Initial checkpoint, e.g. from pretrain");
  return {app, [s] {
            s->settings.check_prefixes({"", "model."});
            const auto bundle = corpus::load_corpus(s->corpus_dir);
            const auto tc = s->training_config();
            const auto langs = split_list(s->langs);
            std::optional<model::TranslationModel<float>> init;
            if (s->init) {
              if (s->settings.any_with_prefix("model.")) {
                throw UsageError("model settings cannot be combined with --init");
              }
              init = model::load_checkpoint<float>(*s->init, bundle.vocab.hash()).model;
            } else {
              init = model::TranslationModel<float>::init(s->model_config(bundle.vocab),
                                                          derive_seed(tc.seed, "model-init"));
            }
            const auto mc = init->config();
            const auto pairs =
                corpus::translation_pairs(select_languages(bundle, bundle.train, langs), bundle.vocab);
            const auto dev = corpus::translation_pairs(select_languages(bundle, bundle.dev, langs), bundle.vocab);
            fs::create_directories(s->out);
            std::ofstream metrics(fs::path(s->out) / "metrics.jsonl", std::ios::binary);
            training::TrainOptions opts;
            opts.metrics = &metrics;
            opts.checkpoint_dir = fs::path(s->out);
            const auto r = training::train(pairs, dev, std::move(*init), tc, opts);
            auto run = run_header("train");
            run["seed"] = tc.seed;
            run["corpus"] = s->corpus_dir;
            run["languages"] = langs;
            run["init"] = s->init ? json(*s->init) : json(nullptr);
            run["training"] = tc;
            run["model"] = mc;
            run["train_pairs"] = pairs.size();
            finish_training(*s, run, r);
          }};
}

// translate ------------------------------------------------------------------

/// Training seed recorded in a checkpoint's metadata, if any.
json checkpoint_seed(const model::Checkpoint<float>& ckpt) {
  const auto& meta = ckpt.metadata;
  if (meta.contains("training") && meta["training"].contains("seed")) return meta["training"]["seed"];
  return nullptr;
}

Command translate(CLI::App& root) {
  struct State {
    Settings settings;
    std::string checkpoint;
    std::optional<std::string> vocab_file;
    std::optional<std::string> corpus_dir;
    std::string input;
    std::string lang;
    std::string out;
    std::size_t nbest = 0;
  };
  auto s = std::make_shared<State>();
  auto* app = root.add_subcommand("translate", "Translate text lines to unit lines with beam search");
  app->add_option("--checkpoint", s->checkpoint, "Model checkpoint")->required();
  auto* v = app->add_option("--vocab", s->vocab_file, "Vocabulary file (vocab.txt)");
  auto* c = app->add_option("--corpus", s->corpus_dir, "Corpus directory supplying vocab.txt");
  v->excludes(c);
  app->add_option("--input", s->input, "Text file, one sentence per line")->required();
  app->add_option("--lang", s->lang, "Source language tag")->required();
  app->add_option("--out", s->out, "Output directory (units.txt or nbest.jsonl)")->required();
  app->add_option("--nbest", s->nbest, "Write the N best hypotheses per line as JSON lines (0 = off)")
      ->capture_default_str();
  s->settings.add_config_option(*app);
  s->settings.add_flags(*app, "decode.", decode_keys(), "Decoding");
  return {app, [s] {
            s->settings.check_prefixes({"decode."});
            if (!s->vocab_file && !s->corpus_dir) throw UsageError("one of --vocab or --corpus is required");
            const fs::path vocab_path = s->vocab_file ? fs::path(*s->vocab_file) : fs::path(*s->corpus_dir) / "vocab.txt";
            const auto vocab = corpus::Vocabulary::load(vocab_path);
            if (!vocab.has_language(s->lang)) throw ValidationError("unknown language '" + s->lang + "'");
            const auto ckpt = model::load_checkpoint<float>(s->checkpoint, vocab.hash());
            decoding::DecodeConfig dc;
            apply_decode(dc, s->settings.with_prefix("decode."));
            if (s->nbest > dc.beam_size) throw ValidationError("--nbest exceeds the beam size");
            const auto space = decoding::output_space(ckpt.model.config());

            std::ifstream in(s->input);
            if (!in) throw ValidationError("cannot read " + s->input);
            std::vector<std::string> lines;
            for (std::string line; std::getline(in, line);) lines.push_back(line);

            std::ostringstream out;
            for (std::size_t i = 0; i < lines.size(); ++i) {
              const auto words = corpus::split_words(corpus::lowercase(lines[i]));
              const auto r = decoding::beam_decode(ckpt.model, vocab.tokenize(words, s->lang), dc);
              if (s->nbest == 0) {
                out << corpus::join_units(r.units.units) << '\n';
                continue;
              }
              json hyps = json::array();
              for (std::size_t h = 0; h < r.nbest.size() && h < s->nbest; ++h) {
                hyps.push_back({{"units", decoding::to_units(r.nbest[h].tokens, space).units},
                                {"score", r.nbest[h].score},
                                {"log_prob", r.nbest[h].log_prob}});
              }
              out << json{{"line", i}, {"nbest", hyps}}.dump() << '\n';
            }
            fs::create_directories(s->out);
            const std::string name = s->nbest == 0 ? "units.txt" : "nbest.jsonl";
            std::ofstream(fs::path(s->out) / name, std::ios::binary) << out.str();
            auto run = run_header("translate");
            run["seed"] = checkpoint_seed(ckpt);
            run["checkpoint"] = s->checkpoint;
            run["vocab"] = vocab_path.string();
            run["input"] = s->input;
            run["lang"] = s->lang;
            run["decode"] = to_json(dc);
            run["nbest"] = s->nbest;
            run["output"] = name;
            write_run_json(s->out, run);
          }};
}

// synth ----------------------------------------------------------------------

Command synth(CLI::App& root) {
  struct State {
    Settings settings;
    std::string input;
    std::string out;
  };
  auto s = std::make_shared<State>();
  auto* app = root.add_subcommand("synth", "Render unit lines to WAV files");
  app->add_option("--input", s->input, "Unit lines: space-separated unit IDs")->required();
  app->add_option("--out", s->out, "Output directory")->required();
  s->settings.add_config_option(*app);
  s->settings.add_flags(*app, "synth.", synth_keys(), "Synthesis");
  return {app, [s] {
            s->settings.check_prefixes({"synth."});
            synthesis::SynthConfig config;
            apply_synth(config, s->settings.with_prefix("synth."));
            std::ifstream in(s->input);
            if (!in) throw ValidationError("cannot read " + s->input);
            std::vector<Waveform> waves;
            std::size_t line_no = 0;
            for (std::string line; std::getline(in, line);) {
              ++line_no;
              units::UnitSequence seq;
              try {
                seq.units = corpus::parse_units(line);
                if (units::has_adjacent_repeats(seq.units)) throw ValidationError("adjacent repeated units");
                seq.collapsed = true;
                waves.push_back(synthesis::synthesize(seq, config));
              } catch (const ValidationError& e) {
                throw ValidationError(s->input + ":" + std::to_string(line_no) + ": " + e.what());
              }
            }
            fs::create_directories(s->out);
            const int width = std::max<int>(6, static_cast<int>(std::to_string(waves.size()).size()));
            for (std::size_t i = 0; i < waves.size(); ++i) {
              std::ostringstream name;
              name << std::setw(width) << std::setfill('0') << i << ".wav";
              synthesis::write_wav(fs::path(s->out) / name.str(), waves[i]);
            }
            auto run = run_header("synth");
            run["seed"] = nullptr;
            run["input"] = s->input;
            run["synth"] = to_json(config);
            run["files"] = waves.size();
            write_run_json(s->out, run);
          }};
}

// evaluate -------------------------------------------------------------------

Command evaluate(CLI::App& root) {
  struct State {
    Settings settings;
    std::optional<std::string> checkpoint;
    bool oracle = false;
    std::string corpus_dir;
    std::optional<std::string> manifest;
    std::string split = "test";
    std::string langs;
    std::string out;
    bool save_wavs = false;
  };
  auto s = std::make_shared<State>();
  auto* app = root.add_subcommand("evaluate", "Decode, synthesize, recognize and score with BLEU");
  auto* ck = app->add_option("--checkpoint", s->checkpoint, "Model checkpoint");
  auto* orc = app->add_flag("--oracle", s->oracle, "Score the reference units instead of a model");
  ck->excludes(orc);
  app->add_option("--corpus", s->corpus_dir, "Corpus directory (lexicon, vocabulary, tiers)")->required();
  app->add_option("--manifest", s->manifest, "Evaluate this manifest instead of a corpus split");
  app->add_option("--split", s->split, "Corpus split")->capture_default_str();
  app->add_option("--lang", s->langs, "Comma-separated languages (default: all)");
  app->add_option("--out", s->out, "Output directory (report.json, report.txt, hypotheses)")->required();
  app->add_flag("--save-wavs", s->save_wavs, "Also write the synthesized WAVs");
  s->settings.add_config_option(*app);
  s->settings.add_flags(*app, "decode.", decode_keys(), "Decoding");
  s->settings.add_flags(*app, "synth.", synth_keys(), "Synthesis");
  return {app, [s] {
            s->settings.check_prefixes({"decode.", "synth."});
            if (!s->checkpoint && !s->oracle) throw UsageError("one of --checkpoint or --oracle is required");
            const auto bundle = corpus::load_corpus(s->corpus_dir);
            std::optional<model::Checkpoint<float>> ckpt;
            if (s->checkpoint) ckpt = model::load_checkpoint<float>(*s->checkpoint, bundle.vocab.hash());
            decoding::DecodeConfig dc;
            apply_decode(dc, s->settings.with_prefix("decode."));
            eval::PipelineOptions popts;
            popts.synth.num_units = bundle.spec.num_units;
            apply_synth(popts.synth, s->settings.with_prefix("synth."));
            if (s->save_wavs) popts.wav_dir = fs::path(s->out) / "wav";

            const auto examples =
                s->manifest ? corpus::read_manifest(*s->manifest, bundle.spec.num_units) : split_of(bundle, s->split);
            const auto chosen = select_languages(bundle, examples, split_list(s->langs));
            eval::OracleUnits oracle;
            std::unique_ptr<eval::ModelUnits> model_units;
            if (ckpt) model_units = std::make_unique<eval::ModelUnits>(ckpt->model, bundle.vocab, dc);
            eval::UnitSource& source = ckpt ? static_cast<eval::UnitSource&>(*model_units) : oracle;
            eval::OracleRecognizer asr(bundle.lexicon, popts.synth);

            const fs::path staging = fs::path(s->out).string() + ".partial";
            fs::remove_all(staging);
            if (popts.wav_dir) popts.wav_dir = staging / "wav";
            try {
              const auto result = eval::asr_bleu_pipeline(chosen, source, asr, bundle.tier_map(), popts);
              eval::write_pipeline_outputs(result, staging);
              auto run = run_header("evaluate");
              run["seed"] = ckpt ? checkpoint_seed(*ckpt) : json(nullptr);
              run["checkpoint"] = s->checkpoint ? json(*s->checkpoint) : json("oracle");
              run["corpus"] = s->corpus_dir;
              run["examples"] = s->manifest ? json(*s->manifest) : json(s->split);
              run["languages"] = split_list(s->langs);
              run["decode"] = to_json(dc);
              run["synth"] = to_json(popts.synth);
              write_run_json(staging, run);
            } catch (...) {
              std::error_code ec;
              fs::remove_all(staging, ec);
              throw;
            }
            fs::create_directories(s->out);
            for (const auto& entry : fs::directory_iterator(staging)) {
              const auto target = fs::path(s->out) / entry.path().filename();
              fs::remove_all(target);
              fs::rename(entry.path(), target);
            }
            fs::remove(staging);
          }};
}

}  // namespace

std::vector<Command> register_commands(CLI::App& app) {
  return {corpus_gen(app), units_fit(app), units_encode(app), pretrain(app),
          train(app),      translate(app), synth(app),        evaluate(app)};
}

}  // namespace unitrans::cli
