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
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "unitrans/units/frames.hpp"
#include "unitrans/units/unit_sequence.hpp"

namespace unitrans::units {

/// The unit vocabulary: k centroids of dimension dim.
struct Codebook {
  std::size_t k = 0;
  std::size_t dim = 0;
  /// Row-major k x dim.
  std::vector<float> centroids;
  std::uint64_t seed = 0;
  std::size_t iterations = 0;
  double inertia = 0.0;

  std::span<const float> centroid(std::size_t i) const {
    return std::span<const float>(centroids).subspan(i * dim, dim);
  }
  bool operator==(const Codebook&) const = default;
};

struct KMeansConfig {
  std::uint64_t seed = 0;
  std::size_t max_iters = 300;
  /// Stop once no centroid moves farther than this (Euclidean).
  double tol = 1e-6;
};

struct KMeansResult {
  Codebook codebook;
  /// Inertia after each assignment step; non-increasing.
  std::vector<double> inertia_trace;
  /// Final assignment of every input point.
  std::vector<UnitId> assignment;
};

/// Lloyd's algorithm with k-means++ seeding. Empty clusters are re-seeded at
/// the point farthest from its assigned centroid. Throws ValidationError when
/// there are fewer distinct points than k.
KMeansResult kmeans_fit(const std::vector<FrameSequence>& frames, std::size_t k,
                        const KMeansConfig& config = {});

/// Nearest centroid per frame; ties go to the lowest index. Uncollapsed.
UnitSequence quantize(const Codebook& codebook, const FrameSequence& frames);

/// Seeded subsample of round(ratio * total) frames drawn without replacement,
/// kept in corpus order.
FrameSequence subsample_frames(const std::vector<FrameSequence>& frames, double ratio,
                               std::uint64_t seed);

/// Text header line then k * dim little-endian float32 values.
void write_codebook(const Codebook& codebook, const std::filesystem::path& path);
Codebook read_codebook(const std::filesystem::path& path);

}  // namespace unitrans::units
