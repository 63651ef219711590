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

#include "unitrans/synthesis/synthesizer.hpp"

#include <cmath>
#include <numbers>

#include "unitrans/common/error.hpp"

namespace unitrans::synthesis {

namespace {

double envelope(std::size_t i, std::size_t n, std::size_t fade) {
  if (fade == 0) return 1.0;
  const std::size_t edge = std::min(i, n - 1 - i);
  if (edge >= fade) return 1.0;
  return 0.5 * (1.0 - std::cos(std::numbers::pi * static_cast<double>(edge) / static_cast<double>(fade)));
}

}  // namespace

std::size_t SynthConfig::frame_samples() const {
  return static_cast<std::size_t>(std::llround(frame_ms * sample_rate / 1000.0));
}

std::size_t SynthConfig::fade_samples() const {
  return static_cast<std::size_t>(std::llround(fade_ms * sample_rate / 1000.0));
}

void SynthConfig::validate() const {
  if (sample_rate <= 0) throw ValidationError("synth: sample_rate must be positive");
  if (!(frame_ms > 0.0) || frame_samples() == 0) throw ValidationError("synth: frame_ms must be > 0");
  if (!(fade_ms >= 0.0) || 2 * fade_samples() > frame_samples()) {
    throw ValidationError("synth: fades longer than half a frame");
  }
  if (!(amplitude > 0.0 && amplitude <= 1.0)) throw ValidationError("synth: amplitude must lie in (0, 1]");
  if (num_units == 0) throw ValidationError("synth: num_units must be >= 1");
  if (!(base_hz > 0.0 && spacing_hz > 0.0)) throw ValidationError("synth: carriers must be positive");
  const double top = carrier_hz(static_cast<units::UnitId>(num_units - 1));
  if (top >= sample_rate / 2.0) {
    throw ValidationError("synth: carrier " + std::to_string(top) + " Hz for unit " +
                          std::to_string(num_units - 1) + " is at or above Nyquist");
  }
}

Waveform synthesize(const UnitSequence& units, const SynthConfig& config) {
  config.validate();
  if (units::has_adjacent_repeats(units.units)) throw ValidationError("synthesize: input is not collapsed");
  const std::size_t n = config.frame_samples();
  const std::size_t fade = config.fade_samples();
  Waveform w;
  w.sample_rate = config.sample_rate;
  w.samples.reserve(units.size() * n);
  for (units::UnitId u : units.units) {
    if (u < 0 || static_cast<std::size_t>(u) >= config.num_units) {
      throw ValidationError("synthesize: unit " + std::to_string(u) + " outside the carrier bank of " +
                            std::to_string(config.num_units));
    }
    const double omega = 2.0 * std::numbers::pi * config.carrier_hz(u) / config.sample_rate;
    for (std::size_t i = 0; i < n; ++i) {
      w.samples.push_back(static_cast<float>(config.amplitude * envelope(i, n, fade) *
                                             std::sin(omega * static_cast<double>(i))));
    }
  }
  return w;
}

Analyzer::Analyzer(const SynthConfig& config) : config_(config) {
  config_.validate();
  frame_ = config_.frame_samples();
  const std::size_t fade = config_.fade_samples();
  const std::size_t k = config_.num_units;
  cos_.assign(k, std::vector<double>(frame_));
  sin_.assign(k, std::vector<double>(frame_));
  g00_.resize(k);
  g01_.resize(k);
  g11_.resize(k);
  for (std::size_t u = 0; u < k; ++u) {
    const double omega =
        2.0 * std::numbers::pi * config_.carrier_hz(static_cast<units::UnitId>(u)) / config_.sample_rate;
    double cc = 0.0, cs = 0.0, ss = 0.0;
    for (std::size_t i = 0; i < frame_; ++i) {
      const double e = envelope(i, frame_, fade);
      cos_[u][i] = e * std::cos(omega * static_cast<double>(i));
      sin_[u][i] = e * std::sin(omega * static_cast<double>(i));
      cc += cos_[u][i] * cos_[u][i];
      cs += cos_[u][i] * sin_[u][i];
      ss += sin_[u][i] * sin_[u][i];
    }
    const double det = cc * ss - cs * cs;
    g00_[u] = ss / det;
    g01_[u] = -cs / det;
    g11_[u] = cc / det;
  }
}

UnitSequence Analyzer::operator()(const Waveform& waveform) const {
  if (waveform.sample_rate != config_.sample_rate) {
    throw ValidationError("analyze: sample rate " + std::to_string(waveform.sample_rate) +
                          " does not match " + std::to_string(config_.sample_rate));
  }
  UnitSequence out;
  const std::size_t total = waveform.samples.size();
  std::vector<double> x(frame_);
  for (std::size_t start = 0; start < total; start += frame_) {
    double power = 0.0;
    for (std::size_t i = 0; i < frame_; ++i) {
      x[i] = start + i < total ? static_cast<double>(waveform.samples[start + i]) : 0.0;
      power += x[i] * x[i];
    }
    if (power / static_cast<double>(frame_) < config_.silence_power) continue;
    std::size_t best = 0;
    double best_energy = -1.0;
    for (std::size_t u = 0; u < cos_.size(); ++u) {
      double a = 0.0, b = 0.0;
      for (std::size_t i = 0; i < frame_; ++i) {
        a += x[i] * cos_[u][i];
        b += x[i] * sin_[u][i];
      }
      const double energy = a * a * g00_[u] + 2.0 * a * b * g01_[u] + b * b * g11_[u];
      if (energy > best_energy) {
        best_energy = energy;
        best = u;
      }
    }
    out.units.push_back(static_cast<units::UnitId>(best));
  }
  return units::collapse(out);
}

UnitSequence analyze(const Waveform& waveform, const SynthConfig& config) {
  return Analyzer(config)(waveform);
}

std::vector<std::string> units_to_text(const UnitSequence& units, const corpus::Lexicon& lexicon) {
  std::vector<std::string> words;
  std::vector<units::UnitId> segment;
  const auto flush = [&] {
    if (segment.empty()) return;
    const auto word = lexicon.word_for(segment);
    words.push_back(word ? *word : kUnknownWord);
    segment.clear();
  };
  for (units::UnitId u : units.units) {
    if (u == corpus::Lexicon::kSeparator) {
      flush();
    } else {
      segment.push_back(u);
    }
  }
  flush();
  return words;
}

}  // namespace unitrans::synthesis
