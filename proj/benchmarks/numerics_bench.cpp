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

#include <vector>

#include <benchmark/benchmark.h>

#include "unitrans/common/random.hpp"
#include "unitrans/numerics/graph.hpp"
#include "unitrans/numerics/kernels.hpp"

namespace {

using unitrans::Rng;
using unitrans::numerics::AttentionSpec;
using unitrans::numerics::Graph;
using unitrans::numerics::Tensor;

std::vector<float> random_vector(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<float> v(n);
  for (auto& x : v) x = static_cast<float>(rng.normal());
  return v;
}

Tensor<float> random_tensor(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  return Tensor<float>({rows, cols}, random_vector(rows * cols, seed));
}

// m x k times k x n; the desk model's FFN input projection at 512 tokens.
void BM_GemmNN(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto k = static_cast<std::size_t>(state.range(1));
  const auto n = static_cast<std::size_t>(state.range(2));
  const auto a = random_vector(m * k, 1), b = random_vector(k * n, 2);
  std::vector<float> c(m * n);
  for (auto _ : state) {
    unitrans::numerics::kernels::gemm_nn(m, k, n, a.data(), b.data(), c.data(), false);
    benchmark::DoNotOptimize(c.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * 2 * m * k * n));
}
BENCHMARK(BM_GemmNN)->Args({512, 64, 256})->Args({512, 256, 64})->Args({64, 64, 64});

void BM_GemmNT(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto k = static_cast<std::size_t>(state.range(1));
  const auto n = static_cast<std::size_t>(state.range(2));
  const auto a = random_vector(m * k, 3), b = random_vector(n * k, 4);
  std::vector<float> c(m * n);
  for (auto _ : state) {
    unitrans::numerics::kernels::gemm_nt(m, k, n, a.data(), b.data(), c.data(), false);
    benchmark::DoNotOptimize(c.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * 2 * m * k * n));
}
// Output projection against a 708-token tied embedding.
BENCHMARK(BM_GemmNT)->Args({512, 64, 708});

void BM_AttentionForwardBackward(benchmark::State& state) {
  const std::size_t batch = 16, len = static_cast<std::size_t>(state.range(0)), heads = 4, d = 64;
  const auto q = random_tensor(batch * len, d, 5), k = random_tensor(batch * len, d, 6),
             v = random_tensor(batch * len, d, 7), w = random_tensor(batch * len, d, 8);
  AttentionSpec spec;
  spec.batch = batch;
  spec.query_len = len;
  spec.key_len = len;
  spec.heads = heads;
  spec.key_lengths.assign(batch, len);
  spec.causal = true;
  for (auto _ : state) {
    Graph<float> g;
    const auto out = g.attention(g.parameter("q", q), g.parameter("k", k), g.parameter("v", v), spec);
    const auto loss = g.dot_const(out, w);
    g.forward();
    benchmark::DoNotOptimize(g.backward(loss));
  }
}
BENCHMARK(BM_AttentionForwardBackward)->Arg(16)->Arg(32);

}  // namespace
