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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "unitrans/common/error.hpp"
#include "unitrans/common/random.hpp"
#include "unitrans/numerics/grad_check.hpp"
#include "unitrans/numerics/graph.hpp"
#include "unitrans/numerics/kernels.hpp"

namespace unitrans::numerics {
namespace {

Tensor<double> random_tensor(Shape shape, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> dist(0.0, scale);
  Tensor<double> t(std::move(shape));
  for (auto& v : t.data()) v = dist(rng);
  return t;
}

// Straightforward triple loop used as the reference for the tiled kernels.
std::vector<double> naive_gemm(std::size_t m, std::size_t k, std::size_t n,
                               const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> c(m * n, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t p = 0; p < k; ++p) c[i * n + j] += a[i * k + p] * b[p * n + j];
  return c;
}

TEST(Tensor, RejectsDataOfWrongLength) {
  EXPECT_THROW(Tensor<float>({2, 3}, std::vector<float>(5)), ShapeError);
}

TEST(Tensor, ItemRequiresOneElement) {
  EXPECT_DOUBLE_EQ(Tensor<double>::scalar(2.5).item(), 2.5);
  EXPECT_THROW(Tensor<double>({2}).item(), ValidationError);
}

TEST(Tensor, AllFiniteSeesInfAndNan) {
  Tensor<float> t({4});
  EXPECT_TRUE(t.all_finite());
  t[2] = std::numeric_limits<float>::infinity();
  EXPECT_FALSE(t.all_finite());
  t[2] = std::nanf("");
  EXPECT_FALSE(t.all_finite());
}

TEST(Kernels, MatchNaiveProductOnRandomShapes) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::size_t> dim(1, 70);
  std::normal_distribution<double> val;
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t m = dim(rng), k = dim(rng), n = dim(rng);
    std::vector<double> a(m * k), b(k * n);
    for (auto& v : a) v = val(rng);
    for (auto& v : b) v = val(rng);
    const auto want = naive_gemm(m, k, n, a, b);

    std::vector<double> c(m * n, 0.0);
    kernels::gemm_nn(m, k, n, a.data(), b.data(), c.data(), false);
    for (std::size_t i = 0; i < c.size(); ++i) ASSERT_NEAR(c[i], want[i], 1e-10);

    std::vector<double> bt(n * k);
    for (std::size_t p = 0; p < k; ++p)
      for (std::size_t j = 0; j < n; ++j) bt[j * k + p] = b[p * n + j];
    std::fill(c.begin(), c.end(), 1.0);
    kernels::gemm_nt(m, k, n, a.data(), bt.data(), c.data(), true);
    for (std::size_t i = 0; i < c.size(); ++i) ASSERT_NEAR(c[i], want[i] + 1.0, 1e-10);

    // a^T * b with a stored as [k, m].
    std::vector<double> at(k * m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t p = 0; p < k; ++p) at[p * m + i] = a[i * k + p];
    std::vector<double> c2(m * n);
    kernels::gemm_tn(k, m, n, at.data(), b.data(), c2.data(), false);
    for (std::size_t i = 0; i < c2.size(); ++i) ASSERT_NEAR(c2[i], want[i], 1e-10);
  }
}

// Each op is checked through loss = sum(op(...) * C) for a random C.
class OpGradient : public ::testing::Test {
 protected:
  std::mt19937_64 rng{5};

  void expect_gradients(ParameterSet<double> params,
                        const std::function<NodeId(Graph<double>&, const ParameterSet<double>&)>& op,
                        GraphOptions graph = {}) {
    Graph<double> probe(graph);
    const NodeId out = op(probe, params);
    probe.forward();
    const Tensor<double> weights = random_tensor(probe.value(out).shape(), rng);
    LossBuilder build = [&](Graph<double>& g, const ParameterSet<double>& p) {
      return g.dot_const(op(g, p), weights);
    };
    GradCheckOptions options;
    options.graph = graph;
    const auto result = grad_check(build, params, options);
    EXPECT_LT(result.max_relative_error, 1e-6)
        << "worst " << result.worst_parameter << "[" << result.worst_index << "] analytic "
        << result.analytic << " numeric " << result.numeric;
  }
};

TEST_F(OpGradient, MatMulAndTransposedMatMul) {
  ParameterSet<double> p{{"a", random_tensor({3, 4}, rng)}, {"b", random_tensor({4, 5}, rng)},
                         {"c", random_tensor({6, 5}, rng)}};
  expect_gradients(p, [](Graph<double>& g, const ParameterSet<double>& ps) {
    const NodeId a = g.parameter("a", ps.at("a"));
    return g.add(g.matmul_bt(g.matmul(a, g.parameter("b", ps.at("b"))), g.parameter("c", ps.at("c"))),
                 g.constant(Tensor<double>::filled({3, 6}, 0.5)));
  });
}

TEST_F(OpGradient, ElementwiseOps) {
  ParameterSet<double> p{{"x", random_tensor({4, 3}, rng)}, {"y", random_tensor({4, 3}, rng)},
                         {"bias", random_tensor({3}, rng)}};
  expect_gradients(p, [](Graph<double>& g, const ParameterSet<double>& ps) {
    const NodeId x = g.parameter("x", ps.at("x"));
    const NodeId y = g.parameter("y", ps.at("y"));
    const NodeId h = g.relu(g.add_row(g.mul(x, y), g.parameter("bias", ps.at("bias"))));
    return g.scale(g.identity(h), -1.5);
  });
}

TEST_F(OpGradient, LayerNorm) {
  ParameterSet<double> p{{"x", random_tensor({5, 6}, rng)}, {"g", random_tensor({6}, rng)},
                         {"b", random_tensor({6}, rng)}};
  expect_gradients(p, [](Graph<double>& g, const ParameterSet<double>& ps) {
    return g.layer_norm(g.parameter("x", ps.at("x")), g.parameter("g", ps.at("g")),
                        g.parameter("b", ps.at("b")));
  });
}

TEST_F(OpGradient, SoftmaxAndLogSoftmax) {
  ParameterSet<double> p{{"x", random_tensor({3, 7}, rng)}};
  expect_gradients(p, [](Graph<double>& g, const ParameterSet<double>& ps) {
    const NodeId x = g.parameter("x", ps.at("x"));
    return g.add(g.softmax(x), g.log_softmax(x));
  });
}

TEST_F(OpGradient, EmbeddingAndSelectRows) {
  ParameterSet<double> p{{"table", random_tensor({6, 4}, rng)}};
  expect_gradients(p, [](Graph<double>& g, const ParameterSet<double>& ps) {
    const NodeId e = g.embedding(g.parameter("table", ps.at("table")), {1, 3, 1, 5, 0});
    return g.select_rows(e, {4, 0, 2, 2});
  });
}

TEST_F(OpGradient, AttentionWithPaddingAndCausalMask) {
  ParameterSet<double> p{{"q", random_tensor({2 * 3, 8}, rng)},
                         {"k", random_tensor({2 * 4, 8}, rng)},
                         {"v", random_tensor({2 * 4, 8}, rng)}};
  for (bool causal : {false, true}) {
    expect_gradients(p, [causal](Graph<double>& g, const ParameterSet<double>& ps) {
      AttentionSpec s;
      s.batch = 2;
      s.query_len = 3;
      s.key_len = causal ? 3 : 4;
      s.heads = 2;
      s.key_lengths = causal ? std::vector<std::size_t>{3, 2} : std::vector<std::size_t>{4, 2};
      s.causal = causal;
      const NodeId k = causal ? g.select_rows(g.parameter("k", ps.at("k")), {0, 1, 2, 4, 5, 6})
                              : g.parameter("k", ps.at("k"));
      const NodeId v = causal ? g.select_rows(g.parameter("v", ps.at("v")), {0, 1, 2, 4, 5, 6})
                              : g.parameter("v", ps.at("v"));
      return g.attention(g.parameter("q", ps.at("q")), k, v, s);
    });
  }
}

TEST_F(OpGradient, DropoutMasksAreFixedPerStep) {
  ParameterSet<double> p{{"q", random_tensor({4, 4}, rng)}, {"k", random_tensor({4, 4}, rng)},
                         {"v", random_tensor({4, 4}, rng)}};
  expect_gradients(
      p,
      [](Graph<double>& g, const ParameterSet<double>& ps) {
        AttentionSpec s;
        s.batch = 1;
        s.query_len = 4;
        s.key_len = 4;
        s.heads = 1;
        s.key_lengths = {4};
        s.dropout = 0.3;
        s.dropout_stream = 9;
        const NodeId a = g.attention(g.parameter("q", ps.at("q")), g.parameter("k", ps.at("k")),
                                     g.parameter("v", ps.at("v")), s);
        return g.dropout(a, 0.25, 17);
      },
      GraphOptions{true, 3, 4});
}

TEST_F(OpGradient, SmoothedCrossEntropy) {
  ParameterSet<double> p{{"x", random_tensor({5, 6}, rng)}};
  LossBuilder build = [](Graph<double>& g, const ParameterSet<double>& ps) {
    return g.smoothed_cross_entropy(g.parameter("x", ps.at("x")), {1, 0, 5, 0, 3}, 0.2, 0);
  };
  EXPECT_LT(grad_check(build, p).max_relative_error, 1e-6);
}

TEST(Graph, ShapeErrorNamesTheOp) {
  Graph<double> g;
  const NodeId a = g.constant(Tensor<double>({2, 3}));
  const NodeId b = g.constant(Tensor<double>({2, 3}));
  g.matmul(a, b);
  try {
    g.forward();
    FAIL() << "expected a shape error";
  } catch (const ShapeError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("op 2"), std::string::npos) << msg;
    EXPECT_NE(msg.find("matmul"), std::string::npos) << msg;
    EXPECT_NE(msg.find("[2,3]"), std::string::npos) << msg;
  }
}

TEST(Graph, BackwardNeedsForwardAndScalarLoss) {
  Graph<double> g;
  Tensor<double> w = Tensor<double>::filled({2, 2}, 1.0);
  const NodeId p = g.parameter("w", w);
  const NodeId s = g.sum(p);
  EXPECT_THROW(g.backward(s), ValidationError);
  g.forward();
  EXPECT_THROW(g.backward(p), ValidationError);
  const auto grads = g.backward(s);
  EXPECT_EQ(grads.at("w"), Tensor<double>::filled({2, 2}, 1.0));
}

TEST(Graph, UnreachedParametersGetZeroGradients) {
  Graph<double> g;
  Tensor<double> w = Tensor<double>::filled({3}, 2.0), unused = Tensor<double>::filled({2}, 1.0);
  const NodeId loss = g.sum(g.parameter("w", w));
  g.parameter("unused", unused);
  g.forward();
  const auto grads = g.backward(loss);
  EXPECT_EQ(grads.at("unused"), Tensor<double>({2}));
}

TEST(Graph, NonFiniteValuesRaiseNumericError) {
  Graph<double> g;
  g.scale(g.constant(Tensor<double>::filled({2}, 1e300)), 1e300);
  EXPECT_THROW(g.forward(), NumericError);
}

TEST(Graph, CrossEntropyRejectsAllPadding) {
  Graph<double> g;
  g.smoothed_cross_entropy(g.constant(Tensor<double>({2, 3})), {0, 0}, 0.1, 0);
  EXPECT_THROW(g.forward(), ValidationError);
}

TEST(Graph, SoftmaxRowsSumToOne) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    Graph<double> g;
    const NodeId y = g.softmax(g.constant(random_tensor({4, 9}, rng, 5.0)));
    g.forward();
    for (std::size_t r = 0; r < 4; ++r) {
      double s = 0.0;
      for (double v : g.value(y).row(r)) {
        EXPECT_GE(v, 0.0);
        s += v;
      }
      EXPECT_NEAR(s, 1.0, 1e-12);
    }
  }
}

TEST(Graph, DropoutIsInactiveOutsideTraining) {
  Graph<float> g;
  const NodeId y = g.dropout(g.constant(Tensor<float>::filled({100}, 1.0f)), 0.5, 1);
  g.forward();
  EXPECT_EQ(g.value(y), Tensor<float>::filled({100}, 1.0f));
}

TEST(Graph, DropoutMaskDependsOnlyOnSeedStepAndStream) {
  const auto run = [](std::uint64_t seed, std::uint64_t step) {
    Graph<float> g(GraphOptions{true, seed, step});
    const NodeId y = g.dropout(g.constant(Tensor<float>::filled({4000}, 1.0f)), 0.3, 7);
    g.forward();
    return g.value(y);
  };
  const auto a = run(1, 2);
  EXPECT_EQ(a, run(1, 2));
  EXPECT_NE(a, run(1, 3));
  std::size_t kept = 0;
  for (float v : a.data()) {
    if (v != 0.0f) {
      EXPECT_FLOAT_EQ(v, 1.0f / 0.7f);
      ++kept;
    }
  }
  EXPECT_NEAR(static_cast<double>(kept) / 4000.0, 0.7, 0.03);
}

TEST(Random, DeriveSeedSeparatesPurposes) {
  EXPECT_NE(derive_seed(1, "init"), derive_seed(1, "dropout"));
  EXPECT_EQ(derive_seed(1, "init"), derive_seed(1, "init"));
  EXPECT_EQ(counter_uniform(1, 2, 3, 4), counter_uniform_at(counter_key(1, 2, 3), 4));
}

TEST(Random, BelowIsInRangeAndCoversIt) {
  Rng rng(4);
  std::vector<int> hits(7, 0);
  for (int i = 0; i < 7000; ++i) ++hits[rng.below(7)];
  for (int h : hits) EXPECT_GT(h, 800);
}

}  // namespace
}  // namespace unitrans::numerics
