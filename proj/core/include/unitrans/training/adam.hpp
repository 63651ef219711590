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

#include <cstdint>

#include "unitrans/numerics/graph.hpp"

namespace unitrans::training {

using numerics::Gradients;
using numerics::ParameterSet;
using numerics::TensorMap;

struct AdamConfig {
  double beta1 = 0.9;
  double beta2 = 0.98;
  double eps = 1e-6;
};

/// First/second moments per parameter and the step counter.
template <typename T>
struct AdamState {
  TensorMap<T> m;
  TensorMap<T> v;
  std::uint64_t t = 0;

  bool operator==(const AdamState&) const = default;
};

/// Zero moments shaped like `params`.
template <typename T>
AdamState<T> make_adam_state(const ParameterSet<T>& params);

/// Bias-corrected Adam:
///   m = b1 m + (1 - b1) g,  v = b2 v + (1 - b2) g^2
///   p -= lr * m_hat / (sqrt(v_hat) + eps)
/// A non-finite gradient rejects the whole step (NumericError naming the
/// parameter) before anything is modified.
template <typename T>
void adam_step(ParameterSet<T>& params, const Gradients<T>& grads, AdamState<T>& state, double lr,
               const AdamConfig& config = {});

/// Scales gradients in place so their global L2 norm is at most max_norm.
/// Returns the norm before clipping. max_norm <= 0 disables clipping.
template <typename T>
double clip_global_norm(Gradients<T>& grads, double max_norm);

}  // namespace unitrans::training
