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

#include "unitrans/units/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "unitrans/common/error.hpp"
#include "unitrans/common/random.hpp"

namespace unitrans::units {

namespace {

double sq_distance(const float* a, const double* b, std::size_t dim) {
  double acc = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    const double d = static_cast<double>(a[i]) - b[i];
    acc += d * d;
  }
  return acc;
}

std::size_t count_distinct(const std::vector<float>& points, std::size_t n, std::size_t dim,
                           std::size_t stop_at) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto row = [&](std::size_t i) { return points.begin() + static_cast<std::ptrdiff_t>(i * dim); };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(row(a), row(a) + static_cast<std::ptrdiff_t>(dim), row(b),
                                        row(b) + static_cast<std::ptrdiff_t>(dim));
  });
  std::size_t distinct = n == 0 ? 0 : 1;
  for (std::size_t i = 1; i < n && distinct < stop_at; ++i) {
    if (!std::equal(row(order[i]), row(order[i]) + static_cast<std::ptrdiff_t>(dim),
                    row(order[i - 1]))) {
      ++distinct;
    }
  }
  return distinct;
}

// Assigns every point; returns inertia.
double assign(const std::vector<float>& points, std::size_t n, std::size_t dim,
              const std::vector<double>& centers, std::size_t k, std::vector<UnitId>& labels,
              std::vector<double>& dists) {
  double inertia = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const float* p = points.data() + i * dim;
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_c = 0;
    for (std::size_t c = 0; c < k; ++c) {
      const double d = sq_distance(p, centers.data() + c * dim, dim);
      if (d < best) {
        best = d;
        best_c = c;
      }
    }
    labels[i] = static_cast<UnitId>(best_c);
    dists[i] = best;
    inertia += best;
  }
  return inertia;
}

}  // namespace

KMeansResult kmeans_fit(const std::vector<FrameSequence>& frames, std::size_t k,
                        const KMeansConfig& config) {
  if (k == 0) throw ValidationError("kmeans_fit: k must be at least 1");
  std::size_t dim = 0;
  for (const auto& seq : frames) {
    if (seq.empty()) continue;
    if (dim == 0) dim = seq.dim;
    if (seq.dim != dim) throw ValidationError("kmeans_fit: frame dimensions differ");
  }
  std::vector<float> points;
  for (const auto& seq : frames) points.insert(points.end(), seq.data.begin(), seq.data.end());
  const std::size_t n = dim == 0 ? 0 : points.size() / dim;
  if (n < k) {
    throw ValidationError("kmeans_fit: " + std::to_string(n) + " frames for k=" +
                          std::to_string(k));
  }
  const std::size_t distinct = count_distinct(points, n, dim, k);
  if (distinct < k) {
    throw ValidationError("kmeans_fit: only " + std::to_string(distinct) +
                          " distinct points for k=" + std::to_string(k));
  }

  // k-means++ seeding.
  Rng rng(derive_seed(config.seed, "kmeans++"));
  std::vector<double> centers(k * dim);
  auto set_center = [&](std::size_t c, std::size_t point) {
    for (std::size_t j = 0; j < dim; ++j) centers[c * dim + j] = points[point * dim + j];
  };
  set_center(0, rng.below(n));
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  for (std::size_t c = 1; c < k; ++c) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      nearest[i] = std::min(nearest[i],
                            sq_distance(points.data() + i * dim, centers.data() + (c - 1) * dim, dim));
      total += nearest[i];
    }
    std::size_t chosen = n - 1;
    if (total > 0.0) {
      const double target = rng.uniform() * total;
      double cum = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        cum += nearest[i];
        if (cum > target && nearest[i] > 0.0) {
          chosen = i;
          break;
        }
      }
      // Rounding can leave `chosen` on an already-selected point.
      if (nearest[chosen] == 0.0) {
        chosen = static_cast<std::size_t>(
            std::max_element(nearest.begin(), nearest.end()) - nearest.begin());
      }
    }
    set_center(c, chosen);
  }

  KMeansResult result;
  std::vector<UnitId> labels(n);
  std::vector<double> dists(n);
  std::vector<double> sums(k * dim);
  std::vector<std::size_t> counts(k);
  std::size_t iter = 0;
  double inertia = assign(points, n, dim, centers, k, labels, dists);
  result.inertia_trace.push_back(inertia);
  while (iter < config.max_iters) {
    ++iter;
    std::fill(sums.begin(), sums.end(), 0.0);
    std::fill(counts.begin(), counts.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto c = static_cast<std::size_t>(labels[i]);
      ++counts[c];
      for (std::size_t j = 0; j < dim; ++j) sums[c * dim + j] += points[i * dim + j];
    }
    double max_shift = 0.0;
    std::vector<bool> taken(n, false);
    for (std::size_t c = 0; c < k; ++c) {
      std::vector<double> updated(dim);
      if (counts[c] > 0) {
        for (std::size_t j = 0; j < dim; ++j) {
          updated[j] = sums[c * dim + j] / static_cast<double>(counts[c]);
        }
      } else {
        // Re-seed an empty cluster at the point farthest from its centroid.
        std::size_t far = 0;
        double far_d = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
          if (!taken[i] && dists[i] > far_d) {
            far_d = dists[i];
            far = i;
          }
        }
        taken[far] = true;
        dists[far] = 0.0;
        for (std::size_t j = 0; j < dim; ++j) updated[j] = points[far * dim + j];
      }
      double shift = 0.0;
      for (std::size_t j = 0; j < dim; ++j) {
        const double d = updated[j] - centers[c * dim + j];
        shift += d * d;
        centers[c * dim + j] = updated[j];
      }
      max_shift = std::max(max_shift, std::sqrt(shift));
    }
    inertia = assign(points, n, dim, centers, k, labels, dists);
    result.inertia_trace.push_back(inertia);
    if (max_shift < config.tol) break;
  }

  result.codebook.k = k;
  result.codebook.dim = dim;
  result.codebook.seed = config.seed;
  result.codebook.iterations = iter;
  result.codebook.inertia = inertia;
  result.codebook.centroids.resize(k * dim);
  for (std::size_t i = 0; i < k * dim; ++i) {
    result.codebook.centroids[i] = static_cast<float>(centers[i]);
  }
  result.assignment = std::move(labels);
  return result;
}

UnitSequence quantize(const Codebook& codebook, const FrameSequence& frames) {
  UnitSequence out;
  if (frames.empty()) return out;
  if (frames.dim != codebook.dim) {
    throw ValidationError("quantize: frame dimension " + std::to_string(frames.dim) +
                          " != codebook dimension " + std::to_string(codebook.dim));
  }
  const std::size_t dim = codebook.dim;
  std::vector<double> centers(codebook.centroids.begin(), codebook.centroids.end());
  out.units.reserve(frames.size());
  for (std::size_t t = 0; t < frames.size(); ++t) {
    const float* p = frames.data.data() + t * dim;
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_c = 0;
    for (std::size_t c = 0; c < codebook.k; ++c) {
      const double d = sq_distance(p, centers.data() + c * dim, dim);
      if (d < best) {
        best = d;
        best_c = c;
      }
    }
    out.units.push_back(static_cast<UnitId>(best_c));
  }
  return out;
}

FrameSequence subsample_frames(const std::vector<FrameSequence>& frames, double ratio,
                               std::uint64_t seed) {
  if (!(ratio > 0.0 && ratio <= 1.0)) {
    throw ValidationError("subsample_frames: ratio must be in (0, 1]");
  }
  FrameSequence out;
  std::size_t total = 0;
  for (const auto& seq : frames) {
    if (seq.empty()) continue;
    if (out.dim == 0) {
      out.dim = seq.dim;
      out.frame_length_ms = seq.frame_length_ms;
      out.hop_ms = seq.hop_ms;
    }
    if (seq.dim != out.dim) throw ValidationError("subsample_frames: frame dimensions differ");
    total += seq.size();
  }
  const auto keep = static_cast<std::size_t>(std::llround(ratio * static_cast<double>(total)));
  std::vector<std::size_t> order(total);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(derive_seed(seed, "units/subsample"));
  rng.shuffle(std::span<std::size_t>(order));
  order.resize(keep);
  std::sort(order.begin(), order.end());

  std::vector<const float*> rows;
  rows.reserve(total);
  for (const auto& seq : frames) {
    for (std::size_t t = 0; t < seq.size(); ++t) rows.push_back(seq.data.data() + t * seq.dim);
  }
  out.data.reserve(keep * out.dim);
  for (std::size_t idx : order) out.data.insert(out.data.end(), rows[idx], rows[idx] + out.dim);
  return out;
}

}  // namespace unitrans::units
