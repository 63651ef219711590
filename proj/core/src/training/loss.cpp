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

#include "unitrans/training/loss.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "unitrans/common/error.hpp"

namespace unitrans::training {

template <typename T>
NodeId label_smoothed_ce(Graph<T>& g, NodeId logits, const std::vector<std::int32_t>& targets,
                         double eps, std::int32_t pad_id) {
  return g.smoothed_cross_entropy(logits, targets, eps, pad_id);
}

template <typename T>
double label_smoothed_ce_value(const Tensor<T>& logits, const std::vector<std::int32_t>& targets,
                               double eps, std::int32_t pad_id) {
  if (!(eps >= 0.0 && eps < 1.0)) throw ValidationError("label smoothing must lie in [0, 1)");
  if (logits.rank() != 2 || logits.rows() != targets.size()) {
    throw ShapeError("label_smoothed_ce: logits " + numerics::shape_string(logits.shape()) +
                     " vs " + std::to_string(targets.size()) + " targets");
  }
  const std::size_t v = logits.cols();
  double total = 0.0;
  std::size_t count = 0;
  for (std::size_t r = 0; r < targets.size(); ++r) {
    if (targets[r] == pad_id) continue;
    if (targets[r] < 0 || static_cast<std::size_t>(targets[r]) >= v) {
      throw ValidationError("label_smoothed_ce: target " + std::to_string(targets[r]) +
                            " outside vocabulary of " + std::to_string(v));
    }
    const T* x = logits.raw() + r * v;
    double mx = -std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < v; ++c) mx = std::max(mx, static_cast<double>(x[c]));
    double se = 0.0, sx = 0.0;
    for (std::size_t c = 0; c < v; ++c) {
      se += std::exp(static_cast<double>(x[c]) - mx);
      sx += static_cast<double>(x[c]);
    }
    const double lse = mx + std::log(se);
    total += lse - (1.0 - eps) * static_cast<double>(x[targets[r]]) - eps / static_cast<double>(v) * sx;
    ++count;
  }
  if (count == 0) throw ValidationError("label_smoothed_ce: every target is padding");
  return total / static_cast<double>(count);
}

template <typename T>
AccuracyCount token_accuracy(const Tensor<T>& logits, const std::vector<std::int32_t>& targets,
                             std::int32_t pad_id) {
  if (logits.rank() != 2 || logits.rows() != targets.size()) {
    throw ShapeError("token_accuracy: logits/targets mismatch");
  }
  AccuracyCount acc;
  const std::size_t v = logits.cols();
  for (std::size_t r = 0; r < targets.size(); ++r) {
    if (targets[r] == pad_id) continue;
    const T* x = logits.raw() + r * v;
    std::size_t best = 0;
    for (std::size_t c = 1; c < v; ++c) {
      if (x[c] > x[best]) best = c;
    }
    acc.correct += static_cast<std::int32_t>(best) == targets[r] ? 1 : 0;
    ++acc.total;
  }
  return acc;
}

template NodeId label_smoothed_ce(Graph<float>&, NodeId, const std::vector<std::int32_t>&, double,
                                  std::int32_t);
template NodeId label_smoothed_ce(Graph<double>&, NodeId, const std::vector<std::int32_t>&, double,
                                  std::int32_t);
template double label_smoothed_ce_value(const Tensor<float>&, const std::vector<std::int32_t>&,
                                        double, std::int32_t);
template double label_smoothed_ce_value(const Tensor<double>&, const std::vector<std::int32_t>&,
                                        double, std::int32_t);
template AccuracyCount token_accuracy(const Tensor<float>&, const std::vector<std::int32_t>&,
                                      std::int32_t);
template AccuracyCount token_accuracy(const Tensor<double>&, const std::vector<std::int32_t>&,
                                      std::int32_t);

}  // namespace unitrans::training
