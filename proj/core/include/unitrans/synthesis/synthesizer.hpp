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

#include <cstddef>
#include <string>
#include <vector>

#include "unitrans/common/waveform.hpp"
#include "unitrans/corpus/lexicon.hpp"
#include "unitrans/units/unit_sequence.hpp"

namespace unitrans::synthesis {

using units::UnitSequence;

struct SynthConfig {
  int sample_rate = 16000;
  double frame_ms = 20.0;
  double base_hz = 300.0;
  double spacing_hz = 35.0;
  double amplitude = 0.5;
  double fade_ms = 2.0;
  /// Units the carrier bank covers, [0, num_units).
  std::size_t num_units = 100;
  /// Frames whose mean power falls below this are silence.
  double silence_power = 1e-6;

  double carrier_hz(units::UnitId unit) const { return base_hz + spacing_hz * unit; }
  std::size_t frame_samples() const;
  std::size_t fade_samples() const;
  /// Throws ValidationError when the top carrier reaches Nyquist or a field
  /// is out of range.
  void validate() const;
  bool operator==(const SynthConfig&) const = default;
};

/// One faded tone frame per unit, phase starting at zero in every frame.
Waveform synthesize(const UnitSequence& units, const SynthConfig& config = {});

/// Per frame, the unit whose carrier subspace (cosine and sine of the faded
/// template) captures the most energy; silent frames are dropped and the
/// result is collapsed. A trailing partial frame is zero-padded.
UnitSequence analyze(const Waveform& waveform, const SynthConfig& config = {});

/// Precomputed carrier bank, reusable across many analyze calls.
class Analyzer {
 public:
  explicit Analyzer(const SynthConfig& config = {});
  UnitSequence operator()(const Waveform& waveform) const;
  const SynthConfig& config() const { return config_; }

 private:
  SynthConfig config_;
  std::size_t frame_ = 0;
  // Per unit: cosine and sine templates and the inverse 2x2 Gram matrix.
  std::vector<std::vector<double>> cos_, sin_;
  std::vector<double> g00_, g01_, g11_;
};

inline constexpr const char* kUnknownWord = "<unk>";

/// Splits on the separator unit and inverts each segment through the
/// lexicon; segments absent from the lexicon become "<unk>".
std::vector<std::string> units_to_text(const UnitSequence& units, const corpus::Lexicon& lexicon);

}  // namespace unitrans::synthesis
