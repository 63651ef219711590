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

#include "unitrans/units/frames.hpp"

#include <fftw3.h>

#include <cmath>
#include <memory>
#include <numbers>
#include <string>

#include "unitrans/common/error.hpp"

namespace unitrans::units {

namespace {

struct FftwPlanDeleter {
  void operator()(fftw_plan_s* plan) const { fftw_destroy_plan(plan); }
};

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace

std::vector<double> band_edges(const FrameConfig& config) {
  std::vector<double> edges(config.num_bands + 2);
  const double span = config.max_hz - config.min_hz;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    edges[i] = config.min_hz + span * static_cast<double>(i) / static_cast<double>(edges.size() - 1);
  }
  return edges;
}

FrameSequence encode_frames(const Waveform& waveform, const FrameConfig& config) {
  if (waveform.sample_rate != config.sample_rate) {
    throw ValidationError("encode_frames: sample rate " + std::to_string(waveform.sample_rate) +
                          " does not match configured " + std::to_string(config.sample_rate));
  }
  if (config.num_bands == 0 || !(config.max_hz > config.min_hz) ||
      config.max_hz > config.sample_rate / 2.0) {
    throw ValidationError("encode_frames: invalid band configuration");
  }
  FrameSequence out;
  out.dim = config.num_bands;
  out.frame_length_ms = config.window_ms;
  out.hop_ms = config.hop_ms;
  const auto& x = waveform.samples;
  if (x.empty()) return out;

  const auto window = static_cast<std::size_t>(std::lround(config.window_ms * config.sample_rate / 1000.0));
  const auto hop = static_cast<std::size_t>(std::lround(config.hop_ms * config.sample_rate / 1000.0));
  if (window == 0 || hop == 0) throw ValidationError("encode_frames: empty window or hop");
  const std::size_t n_fft = next_pow2(window);
  const std::size_t n_bins = n_fft / 2 + 1;
  const std::size_t n_frames = (x.size() + hop - 1) / hop;

  std::vector<double> hann(window);
  for (std::size_t i = 0; i < window; ++i) {
    hann[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                   static_cast<double>(window));
  }

  // weights[band][bin]
  const auto edges = band_edges(config);
  std::vector<double> weights(config.num_bands * n_bins, 0.0);
  for (std::size_t b = 0; b < config.num_bands; ++b) {
    const double lo = edges[b], mid = edges[b + 1], hi = edges[b + 2];
    for (std::size_t k = 0; k < n_bins; ++k) {
      const double f = static_cast<double>(k) * config.sample_rate / static_cast<double>(n_fft);
      double w = 0.0;
      if (f > lo && f <= mid) w = (f - lo) / (mid - lo);
      else if (f > mid && f < hi) w = (hi - f) / (hi - mid);
      weights[b * n_bins + k] = w;
    }
  }

  std::unique_ptr<double, FftwFree> in(static_cast<double*>(fftw_malloc(sizeof(double) * n_fft)));
  std::unique_ptr<fftw_complex, FftwFree> spec(
      static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n_bins)));
  std::unique_ptr<fftw_plan_s, FftwPlanDeleter> plan(
      fftw_plan_dft_r2c_1d(static_cast<int>(n_fft), in.get(), spec.get(), FFTW_ESTIMATE));
  if (!plan) throw Error("encode_frames: FFTW plan creation failed");

  const double log_floor = std::log(config.energy_floor);
  std::vector<double> power(n_bins);
  out.data.resize(n_frames * config.num_bands);
  const auto offset = static_cast<std::ptrdiff_t>(hop / 2) - static_cast<std::ptrdiff_t>(window / 2);
  for (std::size_t t = 0; t < n_frames; ++t) {
    const std::ptrdiff_t start = static_cast<std::ptrdiff_t>(t * hop) + offset;
    for (std::size_t i = 0; i < n_fft; ++i) {
      const std::ptrdiff_t src = start + static_cast<std::ptrdiff_t>(i);
      double v = 0.0;
      if (i < window && src >= 0 && src < static_cast<std::ptrdiff_t>(x.size())) {
        v = x[static_cast<std::size_t>(src)] * hann[i];
      }
      in.get()[i] = v;
    }
    fftw_execute(plan.get());
    for (std::size_t k = 0; k < n_bins; ++k) {
      const double re = spec.get()[k][0], im = spec.get()[k][1];
      power[k] = re * re + im * im;
    }
    for (std::size_t b = 0; b < config.num_bands; ++b) {
      double e = 0.0;
      const double* w = weights.data() + b * n_bins;
      for (std::size_t k = 0; k < n_bins; ++k) e += w[k] * power[k];
      out.data[t * config.num_bands + b] =
          static_cast<float>(e > config.energy_floor ? std::log(e) : log_floor);
    }
  }
  return out;
}

}  // namespace unitrans::units
