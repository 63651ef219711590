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
#include <vector>

#include "unitrans/numerics/graph.hpp"

namespace unitrans::training {

using numerics::Graph;
using numerics::NodeId;
using numerics::Tensor;

/// Mean label-smoothed cross entropy over non-pad rows of logits [N, V].
/// The smoothing mass eps is spread as eps / V over every class, the true
/// class included.
template <typename T>
NodeId label_smoothed_ce(Graph<T>& g, NodeId logits, const std::vector<std::int32_t>& targets,
                         double eps, std::int32_t pad_id);

/// Value-only counterpart evaluated in double, for fixtures and dev loss.
/// Throws ValidationError when every target is pad.
template <typename T>
double label_smoothed_ce_value(const Tensor<T>& logits, const std::vector<std::int32_t>& targets,
                               double eps, std::int32_t pad_id);

struct AccuracyCount {
  std::size_t correct = 0;
  std::size_t total = 0;
  double rate() const { return total == 0 ? 0.0 : static_cast<double>(correct) / total; }
};

/// Argmax agreement on non-pad rows. Ties go to the lowest class id.
template <typename T>
AccuracyCount token_accuracy(const Tensor<T>& logits, const std::vector<std::int32_t>& targets,
                             std::int32_t pad_id);

}  // namespace unitrans::training
