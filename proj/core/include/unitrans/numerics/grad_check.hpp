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
#include <functional>
#include <string>

#include "unitrans/numerics/graph.hpp"

namespace unitrans::numerics {

/// Builds a scalar loss on a fresh graph from the given parameters.
using LossBuilder = std::function<NodeId(Graph<double>&, const ParameterSet<double>&)>;

struct GradCheckOptions {
  double step = 1e-4;
  /// Coordinates sampled per parameter tensor; 0 checks every coordinate.
  std::size_t max_coords_per_tensor = 0;
  std::uint64_t seed = 0;
  GraphOptions graph;
};

struct GradCheckResult {
  double max_relative_error = 0.0;
  std::string worst_parameter;
  std::size_t worst_index = 0;
  double analytic = 0.0;
  double numeric = 0.0;
  std::size_t coordinates_checked = 0;
};

/// Compares backward() against central differences
/// (f(p + step) - f(p - step)) / (2 step), coordinate by coordinate.
/// Relative error uses the denominator max(|a|, |b|, 1e-8).
GradCheckResult grad_check(const LossBuilder& build, ParameterSet<double>& params,
                           const GradCheckOptions& options = {});

}  // namespace unitrans::numerics
