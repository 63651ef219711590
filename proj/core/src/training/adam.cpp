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

#include "unitrans/training/adam.hpp"

#include <cmath>
#include <string>

#include "unitrans/common/error.hpp"

namespace unitrans::training {

template <typename T>
AdamState<T> make_adam_state(const ParameterSet<T>& params) {
  AdamState<T> s;
  for (const auto& [name, p] : params) {
    s.m.emplace(name, numerics::Tensor<T>(p.shape()));
    s.v.emplace(name, numerics::Tensor<T>(p.shape()));
  }
  return s;
}

template <typename T>
void adam_step(ParameterSet<T>& params, const Gradients<T>& grads, AdamState<T>& state, double lr,
               const AdamConfig& config) {
  if (!(lr >= 0.0)) throw ValidationError("adam_step: learning rate must be >= 0");
  for (const auto& [name, p] : params) {
    const auto it = grads.find(name);
    if (it == grads.end()) throw ValidationError("adam_step: no gradient for " + name);
    if (it->second.shape() != p.shape()) {
      throw ValidationError("adam_step: gradient shape mismatch for " + name);
    }
    if (!it->second.all_finite()) throw NumericError("adam_step: non-finite gradient for " + name);
    if (!state.m.count(name) || state.m.at(name).shape() != p.shape()) {
      throw ValidationError("adam_step: optimizer state does not match parameter " + name);
    }
  }
  state.t += 1;
  const double b1 = config.beta1, b2 = config.beta2;
  const double c1 = 1.0 - std::pow(b1, static_cast<double>(state.t));
  const double c2 = 1.0 - std::pow(b2, static_cast<double>(state.t));
  for (auto& [name, p] : params) {
    const auto& g = grads.at(name);
    auto& m = state.m.at(name);
    auto& v = state.v.at(name);
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double gi = g[i];
      const double mi = b1 * m[i] + (1.0 - b1) * gi;
      const double vi = b2 * v[i] + (1.0 - b2) * gi * gi;
      m[i] = static_cast<T>(mi);
      v[i] = static_cast<T>(vi);
      const double m_hat = mi / c1;
      const double v_hat = vi / c2;
      p[i] = static_cast<T>(p[i] - lr * m_hat / (std::sqrt(v_hat) + config.eps));
    }
  }
}

template <typename T>
double clip_global_norm(Gradients<T>& grads, double max_norm) {
  double sq = 0.0;
  for (const auto& [name, g] : grads) {
    for (T v : g.data()) sq += static_cast<double>(v) * v;
  }
  const double norm = std::sqrt(sq);
  if (max_norm > 0.0 && norm > max_norm) {
    const T factor = static_cast<T>(max_norm / norm);
    for (auto& [name, g] : grads) {
      for (T& v : g.data()) v *= factor;
    }
  }
  return norm;
}

template AdamState<float> make_adam_state(const ParameterSet<float>&);
template AdamState<double> make_adam_state(const ParameterSet<double>&);
template void adam_step(ParameterSet<float>&, const Gradients<float>&, AdamState<float>&, double,
                        const AdamConfig&);
template void adam_step(ParameterSet<double>&, const Gradients<double>&, AdamState<double>&, double,
                        const AdamConfig&);
template double clip_global_norm(Gradients<float>&, double);
template double clip_global_norm(Gradients<double>&, double);

}  // namespace unitrans::training
