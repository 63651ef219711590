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
#include <span>
#include <vector>

#include "unitrans/common/waveform.hpp"

namespace unitrans::units {

/// T frames of dimension D, row-major.
struct FrameSequence {
  std::size_t dim = 0;
  std::vector<float> data;
  double frame_length_ms = 25.0;
  double hop_ms = 20.0;

  std::size_t size() const { return dim == 0 ? 0 : data.size() / dim; }
  bool empty() const { return data.empty(); }
  std::span<const float> frame(std::size_t t) const {
    return std::span<const float>(data).subspan(t * dim, dim);
  }
  bool operator==(const FrameSequence&) const = default;
};

struct FrameConfig {
  int sample_rate = 16000;
  double window_ms = 25.0;
  /// Matches the synthesizer's per-unit frame so frame t covers unit t.
  double hop_ms = 20.0;
  std::size_t num_bands = 64;
  double min_hz = 100.0;
  double max_hz = 4000.0;
  /// Band energies are clamped to this before the log.
  double energy_floor = 1e-10;
};

/// Triangular band edges: num_bands + 2 frequencies, linearly spaced.
std::vector<double> band_edges(const FrameConfig& config);

/// Log-magnitude filterbank frames. Frame t is a Hann window of window_ms
/// centred on the middle of hop t; T = ceil(samples / hop). Zero padding
/// outside the signal.
FrameSequence encode_frames(const Waveform& waveform, const FrameConfig& config = {});

}  // namespace unitrans::units
