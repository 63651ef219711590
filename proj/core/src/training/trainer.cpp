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

#include "unitrans/training/trainer.hpp"

#include <chrono>
#include <cmath>

#include <nlohmann/json.hpp>

#include "unitrans/common/error.hpp"
#include "unitrans/common/random.hpp"
#include "unitrans/model/checkpoint.hpp"

namespace unitrans::training {

namespace {

void check_pairs(const std::vector<SequencePair>& pairs, const model::ModelConfig& config,
                 const char* what) {
  const auto v = static_cast<TokenId>(config.vocab_size);
  for (const auto& p : pairs) {
    for (const auto* seq : {&p.source, &p.target}) {
      for (TokenId t : *seq) {
        if (t < 0 || t >= v) {
          throw ValidationError(std::string(what) + " pair " + p.id + " has token " +
                                std::to_string(t) + " outside the model vocabulary of " +
                                std::to_string(v));
        }
      }
    }
    if (p.source.empty()) throw ValidationError(std::string(what) + " pair " + p.id + " has an empty source");
  }
}

nlohmann::json metadata_for(const TrainingConfig& config, std::size_t step) {
  return nlohmann::json{{"training", config}, {"step", step}};
}

}  // namespace

std::optional<std::size_t> TrainResult::first_step_at_or_below(double threshold) const {
  for (const auto& d : dev) {
    if (d.loss <= threshold) return d.step;
  }
  return std::nullopt;
}

double dev_loss(const TranslationModel<float>& model, const std::vector<SequencePair>& pairs,
                double label_smoothing, std::size_t max_tokens) {
  if (pairs.empty()) throw ValidationError("dev_loss: no pairs");
  double total = 0.0;
  std::size_t tokens = 0;
  for (const auto& batch : corpus::batch_iterator(pairs, max_tokens, 0, 0)) {
    Graph<float> g;
    const NodeId logits = model.build_logits(g, batch);
    g.forward();
    std::size_t n = 0;
    for (std::size_t len : batch.target_lengths) n += len;
    total += label_smoothed_ce_value(g.value(logits), batch.target_out, label_smoothing,
                                     corpus::Vocabulary::kPad) *
             static_cast<double>(n);
    tokens += n;
  }
  return total / static_cast<double>(tokens);
}

AccuracyCount teacher_forced_accuracy(const TranslationModel<float>& model,
                                      const std::vector<SequencePair>& pairs,
                                      std::size_t max_tokens) {
  AccuracyCount acc;
  for (const auto& batch : corpus::batch_iterator(pairs, max_tokens, 0, 0)) {
    Graph<float> g;
    const NodeId logits = model.build_logits(g, batch);
    g.forward();
    const AccuracyCount a = token_accuracy(g.value(logits), batch.target_out, corpus::Vocabulary::kPad);
    acc.correct += a.correct;
    acc.total += a.total;
  }
  return acc;
}

TrainResult run_training(const PairSource& source, const std::vector<SequencePair>& dev,
                         TranslationModel<float> model, const TrainingConfig& config,
                         const TrainOptions& options) {
  config.validate();
  check_pairs(dev, model.config(), "dev");
  TrainResult result;
  result.optimizer = make_adam_state(model.parameters());
  const AdamConfig adam{config.adam_beta1, config.adam_beta2, config.adam_eps};
  const std::uint64_t dropout_seed = derive_seed(config.seed, "dropout");
  const std::uint64_t batch_seed = derive_seed(config.seed, "batches");
  if (options.checkpoint_dir) std::filesystem::create_directories(*options.checkpoint_dir);

  const auto start = std::chrono::steady_clock::now();
  std::size_t step = 0;
  bool stop = false;
  for (std::uint64_t epoch = 0; !stop && step < config.max_steps; ++epoch) {
    const auto batches = corpus::batch_iterator(source(epoch), config.max_tokens, batch_seed, epoch);
    if (batches.empty()) throw ValidationError("training: no training pairs");
    for (const auto& batch : batches) {
      if (step >= config.max_steps) break;
      const double lr = poly_lr(step, config);
      StepRecord rec;
      rec.step = step + 1;
      rec.lr = lr;
      try {
        Graph<float> g(numerics::GraphOptions{true, dropout_seed, step});
        const NodeId logits = model.build_logits(g, batch);
        const NodeId loss = label_smoothed_ce(g, logits, batch.target_out, config.label_smoothing,
                                              corpus::Vocabulary::kPad);
        g.forward();
        rec.loss = static_cast<double>(g.value(loss).item());
        rec.token_accuracy =
            token_accuracy(g.value(logits), batch.target_out, corpus::Vocabulary::kPad).rate();
        auto grads = g.backward(loss);
        clip_global_norm(grads, config.clip_norm);
        adam_step(model.parameters(), grads, result.optimizer, lr, adam);
      } catch (const NumericError& e) {
        throw NumericError("training diverged at step " + std::to_string(step + 1) + ": " + e.what());
      }
      ++step;
      rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      result.log.push_back(rec);
      if (options.on_step) options.on_step(rec);

      nlohmann::json line;
      const bool evaluate = !dev.empty() && (step % config.eval_every == 0 || step == config.max_steps);
      if (evaluate) {
        const double d = dev_loss(model, dev, config.label_smoothing, config.max_tokens);
        if (!std::isfinite(d)) throw NumericError("dev loss is not finite at step " + std::to_string(step));
        result.dev.push_back({step, d});
        line["dev_loss"] = d;
        if (options.stop_dev_loss && d <= *options.stop_dev_loss) stop = true;
      }
      if (options.metrics != nullptr && (step % config.log_every == 0 || evaluate)) {
        line["step"] = rec.step;
        line["loss"] = rec.loss;
        line["lr"] = rec.lr;
        line["token_accuracy"] = rec.token_accuracy;
        line["wall_ms"] = rec.wall_ms;
        *options.metrics << line.dump() << '\n';
      }
      if (options.checkpoint_dir && config.checkpoint_every > 0 && step % config.checkpoint_every == 0) {
        model::save_checkpoint(*options.checkpoint_dir / ("ckpt-" + std::to_string(step) + ".bin"),
                               model, &result.optimizer, step, metadata_for(config, step));
      }
      if (stop) break;
    }
  }
  if (options.metrics != nullptr) options.metrics->flush();
  if (options.checkpoint_dir) {
    model::save_checkpoint(*options.checkpoint_dir / "final.bin", model, &result.optimizer, step,
                           metadata_for(config, step));
  }
  result.steps = step;
  result.model = std::move(model);
  return result;
}

TrainResult train(const std::vector<SequencePair>& pairs, const std::vector<SequencePair>& dev,
                  TranslationModel<float> model, const TrainingConfig& config,
                  const TrainOptions& options) {
  check_pairs(pairs, model.config(), "training");
  const PairSource source = [&pairs](std::uint64_t) -> const std::vector<SequencePair>& { return pairs; };
  return run_training(source, dev, std::move(model), config, options);
}

void check_vocab(const model::ModelConfig& config, const corpus::Vocabulary& vocab) {
  if (config.vocab_hash != vocab.hash() || config.vocab_size != vocab.size()) {
    throw ValidationError("vocab hash mismatch: model has " + std::to_string(config.vocab_hash) +
                          ", corpus has " + std::to_string(vocab.hash()));
  }
}

std::vector<SequencePair> denoising_pairs(const std::vector<corpus::ParallelExample>& examples,
                                          const corpus::Vocabulary& vocab,
                                          const NoiseConfig& noise, std::uint64_t seed) {
  std::vector<SequencePair> out;
  out.reserve(examples.size());
  for (const auto& ex : examples) {
    const auto tokens = vocab.tokenize(ex.source_text, ex.source_lang);
    SequencePair p;
    p.id = ex.id;
    p.source = apply_noise(tokens, vocab, noise, derive_seed(seed, ex.id)).input;
    p.target.assign(tokens.begin() + 1, tokens.end() - 1);
    out.push_back(std::move(p));
  }
  return out;
}

TrainResult pretrain(const corpus::CorpusBundle& bundle, const std::vector<std::string>& languages,
                     TranslationModel<float> model, const TrainingConfig& config,
                     const NoiseConfig& noise, const TrainOptions& options) {
  if (languages.empty()) throw ValidationError("pretrain: at least one language is required");
  noise.validate();
  check_vocab(model.config(), bundle.vocab);
  std::vector<corpus::ParallelExample> train_text, dev_text;
  for (const auto& lang : languages) {
    bundle.language(lang);
    const auto t = corpus::filter_language(bundle.train, lang);
    const auto d = corpus::filter_language(bundle.dev, lang);
    train_text.insert(train_text.end(), t.begin(), t.end());
    dev_text.insert(dev_text.end(), d.begin(), d.end());
  }
  const std::uint64_t noise_seed = derive_seed(config.seed, "noise");
  const auto dev = dev_text.empty() ? std::vector<SequencePair>{}
                                    : denoising_pairs(dev_text, bundle.vocab, noise, derive_seed(noise_seed, "dev"));
  std::vector<SequencePair> current;
  const PairSource source = [&](std::uint64_t epoch) -> const std::vector<SequencePair>& {
    current = denoising_pairs(train_text, bundle.vocab, noise,
                              derive_seed(noise_seed, "epoch/" + std::to_string(epoch)));
    return current;
  };
  return run_training(source, dev, std::move(model), config, options);
}

}  // namespace unitrans::training
