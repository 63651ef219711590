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

#include "unitrans/numerics/grad_check.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "unitrans/common/error.hpp"
#include "unitrans/common/random.hpp"

namespace unitrans::numerics {

namespace {

double evaluate(const LossBuilder& build, const ParameterSet<double>& params,
                const GraphOptions& options) {
  Graph<double> graph(options);
  const NodeId loss = build(graph, params);
  graph.forward();
  const double v = graph.value(loss).item();
  if (!std::isfinite(v)) throw NumericError("grad_check: loss evaluation is not finite");
  return v;
}

}  // namespace

GradCheckResult grad_check(const LossBuilder& build, ParameterSet<double>& params,
                           const GradCheckOptions& options) {
  if (!(options.step > 0.0)) throw ValidationError("grad_check: step must be positive");

  Gradients<double> analytic;
  {
    Graph<double> graph(options.graph);
    const NodeId loss = build(graph, params);
    graph.forward();
    analytic = graph.backward(loss);
  }

  Rng rng(derive_seed(options.seed, "grad_check"));
  GradCheckResult result;
  for (auto& [name, tensor] : params) {
    std::vector<std::size_t> coords(tensor.size());
    std::iota(coords.begin(), coords.end(), std::size_t{0});
    if (options.max_coords_per_tensor > 0 && coords.size() > options.max_coords_per_tensor) {
      rng.shuffle(std::span<std::size_t>(coords));
      coords.resize(options.max_coords_per_tensor);
      std::sort(coords.begin(), coords.end());
    }
    const auto& grad = analytic.at(name);
    for (std::size_t idx : coords) {
      const double original = tensor[idx];
      tensor[idx] = original + options.step;
      const double up = evaluate(build, params, options.graph);
      tensor[idx] = original - options.step;
      const double down = evaluate(build, params, options.graph);
      tensor[idx] = original;

      const double numeric = (up - down) / (2.0 * options.step);
      const double a = grad[idx];
      const double denom = std::max({std::abs(a), std::abs(numeric), 1e-8});
      const double err = std::abs(a - numeric) / denom;
      ++result.coordinates_checked;
      if (err > result.max_relative_error || result.worst_parameter.empty()) {
        result.max_relative_error = std::max(result.max_relative_error, err);
        if (err >= result.max_relative_error) {
          result.worst_parameter = name;
          result.worst_index = idx;
          result.analytic = a;
          result.numeric = numeric;
        }
      }
    }
  }
  return result;
}

}  // namespace unitrans::numerics
