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
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "unitrans/numerics/tensor.hpp"

namespace unitrans::numerics {

/// Named tensors; std::map keeps iteration order stable for checkpoints and
/// optimizer updates.
template <typename T>
using TensorMap = std::map<std::string, Tensor<T>>;

template <typename T>
using ParameterSet = TensorMap<T>;

template <typename T>
using Gradients = TensorMap<T>;

struct NodeId {
  std::uint32_t index = 0;
  bool operator==(const NodeId&) const = default;
};

enum class OpKind : std::uint8_t {
  kInput,
  kConstant,
  kParameter,
  kIdentity,
  kMatMul,
  kMatMulBT,
  kAdd,
  kAddRow,
  kMul,
  kScale,
  kRelu,
  kLayerNorm,
  kSoftmax,
  kLogSoftmax,
  kEmbedding,
  kDropout,
  kAttention,
  kSelectRows,
  kSum,
  kDotConst,
  kSmoothedCrossEntropy,
};

const char* op_name(OpKind kind);

/// Geometry of a fused multi-head attention call. Queries are laid out as
/// [batch * query_len, d_model] and keys/values as [batch * key_len, d_model];
/// head h owns columns [h * d_head, (h + 1) * d_head).
struct AttentionSpec {
  std::size_t batch = 1;
  std::size_t query_len = 1;
  std::size_t key_len = 1;
  std::size_t heads = 1;
  /// Valid (non-pad) key count per batch row; pads sit at the tail.
  std::vector<std::size_t> key_lengths;
  /// Query i may only attend keys j <= i.
  bool causal = false;
  double dropout = 0.0;
  std::uint64_t dropout_stream = 0;
};

struct GraphOptions {
  /// Enables dropout.
  bool training = false;
  std::uint64_t seed = 0;
  std::uint64_t step = 0;
};

/// Define-then-run computation graph with reverse-mode differentiation.
///
/// Nodes are appended in topological order by construction, so the graph is
/// acyclic and every node's inputs precede it. forward() evaluates all nodes
/// and retains activations; backward() requires a completed forward().
/// Shape errors are reported at forward() time with the offending op id.
template <typename T>
class Graph {
 public:
  explicit Graph(GraphOptions options = {}) : options_(options) {}

  const GraphOptions& options() const { return options_; }

  // Leaves.
  NodeId input(std::string name);
  NodeId constant(Tensor<T> value);
  /// References `value` without copying; it must outlive the graph.
  NodeId parameter(std::string name, const Tensor<T>& value);

  // Operations.
  NodeId identity(NodeId x);
  NodeId matmul(NodeId a, NodeId b);
  /// a[m,k] * b[n,k]^T
  NodeId matmul_bt(NodeId a, NodeId b);
  NodeId add(NodeId a, NodeId b);
  /// x[m,n] + bias[n] broadcast over rows.
  NodeId add_row(NodeId x, NodeId bias);
  NodeId mul(NodeId a, NodeId b);
  NodeId scale(NodeId x, double factor);
  NodeId relu(NodeId x);
  NodeId layer_norm(NodeId x, NodeId gain, NodeId bias, double eps = 1e-5);
  NodeId softmax(NodeId x);
  NodeId log_softmax(NodeId x);
  /// Rows of table[V,d] gathered by ids.
  NodeId embedding(NodeId table, std::vector<std::int32_t> ids);
  /// Inverted dropout; the identity unless options().training.
  NodeId dropout(NodeId x, double p, std::uint64_t stream);
  NodeId attention(NodeId q, NodeId k, NodeId v, AttentionSpec spec);
  NodeId select_rows(NodeId x, std::vector<std::int32_t> rows);
  NodeId sum(NodeId x);
  /// sum_i x_i * c_i with c a constant of the same shape.
  NodeId dot_const(NodeId x, Tensor<T> c);
  /// Mean over non-ignored rows of cross entropy between softmax(logits) and
  /// q = (1 - eps) * onehot(target) + eps / V.
  NodeId smoothed_cross_entropy(NodeId logits, std::vector<std::int32_t> targets, double eps,
                                std::int32_t ignore_id);

  void set_output(std::string name, NodeId node);

  /// Evaluates every node. Inputs are matched to input() leaves by name.
  TensorMap<T> forward(const TensorMap<T>& inputs = {});
  bool evaluated() const { return evaluated_; }
  const Tensor<T>& value(NodeId node) const;

  /// Gradient of a scalar node with respect to every parameter leaf; zero
  /// tensors for parameters the loss does not reach.
  Gradients<T> backward(NodeId loss);

  std::size_t size() const { return nodes_.size(); }
  OpKind kind(NodeId node) const { return nodes_.at(node.index).kind; }

 private:
  struct Node {
    Node(OpKind k, std::vector<NodeId> in, std::string n)
        : kind(k), inputs(std::move(in)), name(std::move(n)) {}

    OpKind kind;
    std::vector<NodeId> inputs;
    std::string name;
    const Tensor<T>* parameter = nullptr;
    double real = 0.0;
    double real2 = 0.0;
    std::int32_t int_arg = 0;
    std::uint64_t stream = 0;
    std::vector<std::int32_t> ids;
    std::shared_ptr<const AttentionSpec> attention;
    Tensor<T> value;
    Tensor<T> saved;
    Tensor<T> saved2;
  };

  NodeId push(Node node);
  void evaluate(std::size_t index, const TensorMap<T>& inputs);
  void propagate(std::size_t index, std::vector<Tensor<T>>& grads);
  [[noreturn]] void shape_error(std::size_t index, const std::string& detail) const;

  GraphOptions options_;
  std::vector<Node> nodes_;
  std::vector<std::pair<std::string, NodeId>> outputs_;
  bool evaluated_ = false;
};

extern template class Graph<float>;
extern template class Graph<double>;

}  // namespace unitrans::numerics
