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

#include "unitrans/numerics/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "unitrans/common/error.hpp"
#include "unitrans/common/random.hpp"
#include "unitrans/numerics/kernels.hpp"

namespace unitrans::numerics {

namespace {

// Reductions run in double regardless of the storage type.
using Acc = double;

template <typename T>
Tensor<T>& ensure(std::vector<Tensor<T>>& grads, std::size_t index, const Shape& shape) {
  if (grads[index].empty() && shape_size(shape) > 0) grads[index] = Tensor<T>(shape);
  if (grads[index].shape() != shape) grads[index] = Tensor<T>(shape);
  return grads[index];
}

bool dropout_active(const GraphOptions& options, double p) { return options.training && p > 0.0; }

}  // namespace

const char* op_name(OpKind kind) {
  switch (kind) {
    case OpKind::kInput: return "input";
    case OpKind::kConstant: return "constant";
    case OpKind::kParameter: return "parameter";
    case OpKind::kIdentity: return "identity";
    case OpKind::kMatMul: return "matmul";
    case OpKind::kMatMulBT: return "matmul_bt";
    case OpKind::kAdd: return "add";
    case OpKind::kAddRow: return "add_row";
    case OpKind::kMul: return "mul";
    case OpKind::kScale: return "scale";
    case OpKind::kRelu: return "relu";
    case OpKind::kLayerNorm: return "layer_norm";
    case OpKind::kSoftmax: return "softmax";
    case OpKind::kLogSoftmax: return "log_softmax";
    case OpKind::kEmbedding: return "embedding";
    case OpKind::kDropout: return "dropout";
    case OpKind::kAttention: return "attention";
    case OpKind::kSelectRows: return "select_rows";
    case OpKind::kSum: return "sum";
    case OpKind::kDotConst: return "dot_const";
    case OpKind::kSmoothedCrossEntropy: return "smoothed_cross_entropy";
  }
  return "unknown";
}

template <typename T>
NodeId Graph<T>::push(Node node) {
  for (NodeId in : node.inputs) {
    if (in.index >= nodes_.size()) {
      throw ValidationError("op " + std::to_string(nodes_.size()) + " (" + op_name(node.kind) +
                            ") references unknown node " + std::to_string(in.index));
    }
  }
  nodes_.push_back(std::move(node));
  evaluated_ = false;
  return NodeId{static_cast<std::uint32_t>(nodes_.size() - 1)};
}

template <typename T>
NodeId Graph<T>::input(std::string name) {
  Node n{OpKind::kInput, {}, std::move(name)};
  return push(std::move(n));
}

template <typename T>
NodeId Graph<T>::constant(Tensor<T> value) {
  Node n{OpKind::kConstant, {}, {}};
  n.value = std::move(value);
  return push(std::move(n));
}

template <typename T>
NodeId Graph<T>::parameter(std::string name, const Tensor<T>& value) {
  Node n{OpKind::kParameter, {}, std::move(name)};
  n.parameter = &value;
  return push(std::move(n));
}

template <typename T>
NodeId Graph<T>::identity(NodeId x) {
  return push(Node{OpKind::kIdentity, {x}, {}});
}

template <typename T>
NodeId Graph<T>::matmul(NodeId a, NodeId b) {
  return push(Node{OpKind::kMatMul, {a, b}, {}});
}

template <typename T>
NodeId Graph<T>::matmul_bt(NodeId a, NodeId b) {
  return push(Node{OpKind::kMatMulBT, {a, b}, {}});
}

template <typename T>
NodeId Graph<T>::add(NodeId a, NodeId b) {
  return push(Node{OpKind::kAdd, {a, b}, {}});
}

template <typename T>
NodeId Graph<T>::add_row(NodeId x, NodeId bias) {
  return push(Node{OpKind::kAddRow, {x, bias}, {}});
}

template <typename T>
NodeId Graph<T>::mul(NodeId a, NodeId b) {
  return push(Node{OpKind::kMul, {a, b}, {}});
}

template <typename T>
NodeId Graph<T>::scale(NodeId x, double factor) {
  Node n{OpKind::kScale, {x}, {}};
  n.real = factor;
  return push(std::move(n));
}

template <typename T>
NodeId Graph<T>::relu(NodeId x) {
  return push(Node{OpKind::kRelu, {x}, {}});
}

template <typename T>
NodeId Graph<T>::layer_norm(NodeId x, NodeId gain, NodeId bias, double eps) {
  Node n{OpKind::kLayerNorm, {x, gain, bias}, {}};
  n.real = eps;
  return push(std::move(n));
}

template <typename T>
NodeId Graph<T>::softmax(NodeId x) {
  return push(Node{OpKind::kSoftmax, {x}, {}});
}

template <typename T>
NodeId Graph<T>::log_softmax(NodeId x) {
  return push(Node{OpKind::kLogSoftmax, {x}, {}});
}

template <typename T>
NodeId Graph<T>::embedding(NodeId table, std::vector<std::int32_t> ids) {
  Node n{OpKind::kEmbedding, {table}, {}};
  n.ids = std::move(ids);
  return push(std::move(n));
}

template <typename T>
NodeId Graph<T>::dropout(NodeId x, double p, std::uint64_t stream) {
  if (!(p >= 0.0 && p < 1.0)) {
    throw ValidationError("dropout probability must be in [0,1), got " + std::to_string(p));
  }
  Node n{OpKind::kDropout, {x}, {}};
  n.real = p;
  n.stream = stream;
  return push(std::move(n));
}

template <typename T>
NodeId Graph<T>::attention(NodeId q, NodeId k, NodeId v, AttentionSpec spec) {
  if (!(spec.dropout >= 0.0 && spec.dropout < 1.0)) {
    throw ValidationError("attention dropout must be in [0,1)");
  }
  Node n{OpKind::kAttention, {q, k, v}, {}};
  n.attention = std::make_shared<const AttentionSpec>(std::move(spec));
  return push(std::move(n));
}

template <typename T>
NodeId Graph<T>::select_rows(NodeId x, std::vector<std::int32_t> rows) {
  Node n{OpKind::kSelectRows, {x}, {}};
  n.ids = std::move(rows);
  return push(std::move(n));
}

template <typename T>
NodeId Graph<T>::sum(NodeId x) {
  return push(Node{OpKind::kSum, {x}, {}});
}

template <typename T>
NodeId Graph<T>::dot_const(NodeId x, Tensor<T> c) {
  Node n{OpKind::kDotConst, {x}, {}};
  n.saved = std::move(c);
  return push(std::move(n));
}

template <typename T>
NodeId Graph<T>::smoothed_cross_entropy(NodeId logits, std::vector<std::int32_t> targets,
                                        double eps, std::int32_t ignore_id) {
  if (!(eps >= 0.0 && eps < 1.0)) {
    throw ValidationError("label smoothing must be in [0,1), got " + std::to_string(eps));
  }
  Node n{OpKind::kSmoothedCrossEntropy, {logits}, {}};
  n.ids = std::move(targets);
  n.real = eps;
  n.int_arg = ignore_id;
  return push(std::move(n));
}

template <typename T>
void Graph<T>::set_output(std::string name, NodeId node) {
  outputs_.emplace_back(std::move(name), node);
}

template <typename T>
const Tensor<T>& Graph<T>::value(NodeId node) const {
  if (!evaluated_) throw ValidationError("graph value requested before forward()");
  const Node& n = nodes_.at(node.index);
  return n.kind == OpKind::kParameter ? *n.parameter : n.value;
}

template <typename T>
void Graph<T>::shape_error(std::size_t index, const std::string& detail) const {
  std::string shapes;
  for (NodeId in : nodes_[index].inputs) {
    const Node& src = nodes_[in.index];
    const Tensor<T>& v = src.kind == OpKind::kParameter ? *src.parameter : src.value;
    if (!shapes.empty()) shapes += " x ";
    shapes += shape_string(v.shape());
  }
  throw ShapeError("op " + std::to_string(index) + " (" + op_name(nodes_[index].kind) +
                   "): " + detail + "; input shapes " + shapes);
}

template <typename T>
TensorMap<T> Graph<T>::forward(const TensorMap<T>& inputs) {
  evaluated_ = false;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    evaluate(i, inputs);
    const Node& n = nodes_[i];
    if (n.kind != OpKind::kParameter && n.kind != OpKind::kInput && !n.value.all_finite()) {
      throw NumericError("op " + std::to_string(i) + " (" + op_name(n.kind) +
                         ") produced a non-finite value");
    }
  }
  evaluated_ = true;
  TensorMap<T> out;
  for (const auto& [name, node] : outputs_) out[name] = value(node);
  return out;
}

template <typename T>
void Graph<T>::evaluate(std::size_t index, const TensorMap<T>& inputs) {
  Node& n = nodes_[index];
  auto in = [&](std::size_t slot) -> const Tensor<T>& {
    const Node& src = nodes_[n.inputs[slot].index];
    return src.kind == OpKind::kParameter ? *src.parameter : src.value;
  };

  switch (n.kind) {
    case OpKind::kInput: {
      auto it = inputs.find(n.name);
      if (it == inputs.end()) {
        throw ValidationError("op " + std::to_string(index) + ": missing input '" + n.name + "'");
      }
      n.value = it->second;
      if (!n.value.all_finite()) {
        throw NumericError("input '" + n.name + "' contains non-finite values");
      }
      break;
    }
    case OpKind::kConstant:
    case OpKind::kParameter:
      break;
    case OpKind::kIdentity:
      n.value = in(0);
      break;
    case OpKind::kMatMul: {
      const auto& a = in(0);
      const auto& b = in(1);
      if (a.rank() != 2 || b.rank() != 2 || a.dim(1) != b.dim(0)) {
        shape_error(index, "inner dimensions differ");
      }
      n.value = Tensor<T>({a.dim(0), b.dim(1)});
      kernels::gemm_nn(a.dim(0), a.dim(1), b.dim(1), a.raw(), b.raw(), n.value.raw(), false);
      break;
    }
    case OpKind::kMatMulBT: {
      const auto& a = in(0);
      const auto& b = in(1);
      if (a.rank() != 2 || b.rank() != 2 || a.dim(1) != b.dim(1)) {
        shape_error(index, "inner dimensions differ");
      }
      n.value = Tensor<T>({a.dim(0), b.dim(0)});
      kernels::gemm_nt(a.dim(0), a.dim(1), b.dim(0), a.raw(), b.raw(), n.value.raw(), false);
      break;
    }
    case OpKind::kAdd:
    case OpKind::kMul: {
      const auto& a = in(0);
      const auto& b = in(1);
      if (a.shape() != b.shape()) shape_error(index, "operands must have equal shapes");
      n.value = a;
      auto out = n.value.data();
      auto rhs = b.data();
      if (n.kind == OpKind::kAdd) {
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += rhs[i];
      } else {
        for (std::size_t i = 0; i < out.size(); ++i) out[i] *= rhs[i];
      }
      break;
    }
    case OpKind::kAddRow: {
      const auto& x = in(0);
      const auto& b = in(1);
      if (x.rank() != 2 || b.size() != x.dim(1)) shape_error(index, "bias length != columns");
      n.value = x;
      const std::size_t cols = x.dim(1);
      for (std::size_t r = 0; r < x.dim(0); ++r) {
        T* row = n.value.raw() + r * cols;
        for (std::size_t c = 0; c < cols; ++c) row[c] += b[c];
      }
      break;
    }
    case OpKind::kScale: {
      n.value = in(0);
      const T f = static_cast<T>(n.real);
      for (T& v : n.value.data()) v *= f;
      break;
    }
    case OpKind::kRelu: {
      n.value = in(0);
      for (T& v : n.value.data()) v = v > T{0} ? v : T{0};
      break;
    }
    case OpKind::kLayerNorm: {
      const auto& x = in(0);
      const auto& g = in(1);
      const auto& b = in(2);
      const std::size_t cols = x.cols();
      if (x.rank() == 0 || g.size() != cols || b.size() != cols) {
        shape_error(index, "gain/bias length must equal row width");
      }
      const std::size_t rows = x.size() / cols;
      n.value = Tensor<T>(x.shape());
      n.saved = Tensor<T>(x.shape());
      n.saved2 = Tensor<T>({rows});
      for (std::size_t r = 0; r < rows; ++r) {
        const T* xr = x.raw() + r * cols;
        Acc mean = 0;
        for (std::size_t c = 0; c < cols; ++c) mean += xr[c];
        mean /= static_cast<Acc>(cols);
        Acc var = 0;
        for (std::size_t c = 0; c < cols; ++c) {
          const Acc d = xr[c] - mean;
          var += d * d;
        }
        var /= static_cast<Acc>(cols);
        const Acc rstd = 1.0 / std::sqrt(var + n.real);
        n.saved2[r] = static_cast<T>(rstd);
        T* xh = n.saved.raw() + r * cols;
        T* yr = n.value.raw() + r * cols;
        for (std::size_t c = 0; c < cols; ++c) {
          xh[c] = static_cast<T>((xr[c] - mean) * rstd);
          yr[c] = xh[c] * g[c] + b[c];
        }
      }
      break;
    }
    case OpKind::kSoftmax:
    case OpKind::kLogSoftmax: {
      const auto& x = in(0);
      if (x.rank() == 0) shape_error(index, "softmax needs rank >= 1");
      const std::size_t cols = x.cols();
      const std::size_t rows = x.size() / cols;
      n.value = Tensor<T>(x.shape());
      for (std::size_t r = 0; r < rows; ++r) {
        const T* xr = x.raw() + r * cols;
        T* yr = n.value.raw() + r * cols;
        const T mx = *std::max_element(xr, xr + cols);
        Acc z = 0;
        if (n.kind == OpKind::kSoftmax) {
          for (std::size_t c = 0; c < cols; ++c) {
            yr[c] = std::exp(xr[c] - mx);
            z += yr[c];
          }
          const T inv = static_cast<T>(1.0 / z);
          for (std::size_t c = 0; c < cols; ++c) yr[c] *= inv;
        } else {
          for (std::size_t c = 0; c < cols; ++c) z += std::exp(xr[c] - mx);
          const Acc lz = std::log(z);
          for (std::size_t c = 0; c < cols; ++c) {
            yr[c] = static_cast<T>(static_cast<Acc>(xr[c] - mx) - lz);
          }
        }
      }
      break;
    }
    case OpKind::kEmbedding: {
      const auto& table = in(0);
      if (table.rank() != 2) shape_error(index, "embedding table must be rank 2");
      const std::size_t vocab = table.dim(0);
      const std::size_t d = table.dim(1);
      n.value = Tensor<T>({n.ids.size(), d});
      for (std::size_t i = 0; i < n.ids.size(); ++i) {
        const auto id = n.ids[i];
        if (id < 0 || static_cast<std::size_t>(id) >= vocab) {
          throw ValidationError("op " + std::to_string(index) + " (embedding): id " +
                                std::to_string(id) + " outside vocabulary of " +
                                std::to_string(vocab));
        }
        std::copy_n(table.raw() + static_cast<std::size_t>(id) * d, d, n.value.raw() + i * d);
      }
      break;
    }
    case OpKind::kDropout: {
      n.value = in(0);
      if (!dropout_active(options_, n.real)) break;
      const double p = n.real;
      const T keep_scale = static_cast<T>(1.0 / (1.0 - p));
      auto out = n.value.data();
      const KeepMask keep_at(counter_key(options_.seed, options_.step, n.stream), p);
      for (std::size_t i = 0; i < out.size(); ++i) {
        const bool keep = keep_at(i);
        out[i] = keep ? out[i] * keep_scale : T{0};
      }
      break;
    }
    case OpKind::kAttention: {
      const AttentionSpec& s = *n.attention;
      const auto& q = in(0);
      const auto& k = in(1);
      const auto& v = in(2);
      if (q.rank() != 2 || k.rank() != 2 || v.rank() != 2) shape_error(index, "rank 2 required");
      const std::size_t d = q.dim(1);
      if (s.heads == 0 || d % s.heads != 0 || k.dim(1) != d || v.dim(1) != d ||
          q.dim(0) != s.batch * s.query_len || k.dim(0) != s.batch * s.key_len ||
          v.dim(0) != s.batch * s.key_len || s.key_lengths.size() != s.batch) {
        shape_error(index, "attention geometry mismatch");
      }
      for (std::size_t len : s.key_lengths) {
        if (len == 0 || len > s.key_len) shape_error(index, "key length out of range");
      }
      const std::size_t dh = d / s.heads;
      const Acc scale = 1.0 / std::sqrt(static_cast<Acc>(dh));
      const bool drop = dropout_active(options_, s.dropout);
      const T keep_scale = static_cast<T>(drop ? 1.0 / (1.0 - s.dropout) : 1.0);
      const std::size_t tq = s.query_len;
      const std::size_t tk = s.key_len;
      n.value = Tensor<T>({q.dim(0), d});
      n.saved = Tensor<T>({s.batch * s.heads * tq * tk});
      n.saved2 = drop ? Tensor<T>({s.batch * s.heads * tq * tk}) : Tensor<T>();
      std::vector<Acc> scores(tk);
      const KeepMask keep_at(counter_key(options_.seed, options_.step, s.dropout_stream), s.dropout);
      for (std::size_t b = 0; b < s.batch; ++b) {
        for (std::size_t h = 0; h < s.heads; ++h) {
          for (std::size_t i = 0; i < tq; ++i) {
            const T* qi = q.raw() + (b * tq + i) * d + h * dh;
            const std::size_t limit = std::min(s.key_lengths[b], s.causal ? i + 1 : tk);
            Acc mx = -std::numeric_limits<Acc>::infinity();
            for (std::size_t j = 0; j < limit; ++j) {
              const T* kj = k.raw() + (b * tk + j) * d + h * dh;
              T dot = 0;
              for (std::size_t c = 0; c < dh; ++c) dot += qi[c] * kj[c];
              scores[j] = static_cast<Acc>(dot) * scale;
              mx = std::max(mx, scores[j]);
            }
            Acc z = 0;
            for (std::size_t j = 0; j < limit; ++j) {
              scores[j] = static_cast<Acc>(std::exp(static_cast<T>(scores[j] - mx)));
              z += scores[j];
            }
            const std::size_t base = ((b * s.heads + h) * tq + i) * tk;
            T* out = n.value.raw() + (b * tq + i) * d + h * dh;
            for (std::size_t j = 0; j < limit; ++j) {
              const T pj = static_cast<T>(scores[j] / z);
              n.saved[base + j] = pj;
              T weight = pj;
              if (drop) {
                const bool keep = keep_at(base + j);
                weight = keep ? pj * keep_scale : T{0};
                n.saved2[base + j] = weight;
              }
              if (weight == T{0}) continue;
              const T* vj = v.raw() + (b * tk + j) * d + h * dh;
              for (std::size_t c = 0; c < dh; ++c) out[c] += weight * vj[c];
            }
          }
        }
      }
      break;
    }
    case OpKind::kSelectRows: {
      const auto& x = in(0);
      if (x.rank() != 2) shape_error(index, "select_rows needs rank 2");
      const std::size_t cols = x.dim(1);
      n.value = Tensor<T>({n.ids.size(), cols});
      for (std::size_t i = 0; i < n.ids.size(); ++i) {
        const auto r = n.ids[i];
        if (r < 0 || static_cast<std::size_t>(r) >= x.dim(0)) {
          shape_error(index, "row " + std::to_string(r) + " out of range");
        }
        std::copy_n(x.raw() + static_cast<std::size_t>(r) * cols, cols, n.value.raw() + i * cols);
      }
      break;
    }
    case OpKind::kSum: {
      Acc total = 0;
      for (T v : in(0).data()) total += v;
      n.value = Tensor<T>::scalar(static_cast<T>(total));
      break;
    }
    case OpKind::kDotConst: {
      const auto& x = in(0);
      if (x.shape() != n.saved.shape()) shape_error(index, "constant shape differs");
      Acc total = 0;
      for (std::size_t i = 0; i < x.size(); ++i) total += static_cast<Acc>(x[i]) * n.saved[i];
      n.value = Tensor<T>::scalar(static_cast<T>(total));
      break;
    }
    case OpKind::kSmoothedCrossEntropy: {
      const auto& x = in(0);
      if (x.rank() != 2 || x.dim(0) != n.ids.size()) {
        shape_error(index, "logits rows must equal target count");
      }
      const std::size_t vocab = x.dim(1);
      const Acc eps = n.real;
      n.saved = Tensor<T>(x.shape());
      Acc total = 0;
      std::size_t count = 0;
      for (std::size_t r = 0; r < n.ids.size(); ++r) {
        const auto t = n.ids[r];
        if (t == n.int_arg) continue;
        if (t < 0 || static_cast<std::size_t>(t) >= vocab) {
          throw ValidationError("op " + std::to_string(index) + ": target " + std::to_string(t) +
                                " outside vocabulary of " + std::to_string(vocab));
        }
        const T* xr = x.raw() + r * vocab;
        const T mx = *std::max_element(xr, xr + vocab);
        Acc z = 0;
        Acc row_sum = 0;
        T* pr = n.saved.raw() + r * vocab;
        for (std::size_t c = 0; c < vocab; ++c) {
          pr[c] = std::exp(xr[c] - mx);
          z += pr[c];
          row_sum += xr[c];
        }
        const Acc lse = mx + std::log(z);
        const T inv = static_cast<T>(1.0 / z);
        for (std::size_t c = 0; c < vocab; ++c) pr[c] *= inv;
        total += lse - (1.0 - eps) * xr[t] - eps / static_cast<Acc>(vocab) * row_sum;
        ++count;
      }
      if (count == 0) {
        throw ValidationError("op " + std::to_string(index) +
                              " (smoothed_cross_entropy): every target is padding");
      }
      n.real2 = static_cast<double>(count);
      n.value = Tensor<T>::scalar(static_cast<T>(total / static_cast<Acc>(count)));
      break;
    }
  }
}

template <typename T>
Gradients<T> Graph<T>::backward(NodeId loss) {
  if (!evaluated_) throw ValidationError("backward() called before forward()");
  if (loss.index >= nodes_.size()) throw ValidationError("backward(): unknown loss node");
  if (nodes_[loss.index].value.size() != 1) {
    throw ShapeError("backward(): loss node " + std::to_string(loss.index) + " has shape " +
                     shape_string(nodes_[loss.index].value.shape()) + ", expected a scalar");
  }
  std::vector<Tensor<T>> grads(nodes_.size());
  grads[loss.index] = Tensor<T>(nodes_[loss.index].value.shape());
  grads[loss.index][0] = T{1};
  for (std::size_t i = loss.index + 1; i-- > 0;) {
    if (grads[i].empty()) continue;
    propagate(i, grads);
  }

  Gradients<T> out;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Node& n = nodes_[i];
    if (n.kind != OpKind::kParameter) continue;
    auto [it, inserted] = out.try_emplace(n.name, n.parameter->shape());
    if (i <= loss.index && !grads[i].empty()) {
      auto dst = it->second.data();
      auto src = grads[i].data();
      for (std::size_t j = 0; j < dst.size(); ++j) dst[j] += src[j];
    }
  }
  return out;
}

template <typename T>
void Graph<T>::propagate(std::size_t index, std::vector<Tensor<T>>& grads) {
  const Node& n = nodes_[index];
  const Tensor<T>& g = grads[index];
  auto in = [&](std::size_t slot) -> const Tensor<T>& {
    const Node& src = nodes_[n.inputs[slot].index];
    return src.kind == OpKind::kParameter ? *src.parameter : src.value;
  };
  auto grad_of = [&](std::size_t slot) -> Tensor<T>& {
    return ensure(grads, n.inputs[slot].index, in(slot).shape());
  };

  switch (n.kind) {
    case OpKind::kInput:
    case OpKind::kConstant:
    case OpKind::kParameter:
      break;
    case OpKind::kIdentity: {
      auto dst = grad_of(0).data();
      for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += g[i];
      break;
    }
    case OpKind::kMatMul: {
      const auto& a = in(0);
      const auto& b = in(1);
      const std::size_t m = a.dim(0), k = a.dim(1), cols = b.dim(1);
      kernels::gemm_nt(m, cols, k, g.raw(), b.raw(), grad_of(0).raw(), true);
      kernels::gemm_tn(m, k, cols, a.raw(), g.raw(), grad_of(1).raw(), true);
      break;
    }
    case OpKind::kMatMulBT: {
      const auto& a = in(0);
      const auto& b = in(1);
      const std::size_t m = a.dim(0), k = a.dim(1), rows_b = b.dim(0);
      kernels::gemm_nn(m, rows_b, k, g.raw(), b.raw(), grad_of(0).raw(), true);
      kernels::gemm_tn(m, rows_b, k, g.raw(), a.raw(), grad_of(1).raw(), true);
      break;
    }
    case OpKind::kAdd: {
      for (std::size_t slot = 0; slot < 2; ++slot) {
        auto dst = grad_of(slot).data();
        for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += g[i];
      }
      break;
    }
    case OpKind::kMul: {
      const auto& a = in(0);
      const auto& b = in(1);
      {
        auto da = grad_of(0).data();
        for (std::size_t i = 0; i < da.size(); ++i) da[i] += g[i] * b[i];
      }
      auto db = grad_of(1).data();
      for (std::size_t i = 0; i < db.size(); ++i) db[i] += g[i] * a[i];
      break;
    }
    case OpKind::kAddRow: {
      {
        auto dx = grad_of(0).data();
        for (std::size_t i = 0; i < dx.size(); ++i) dx[i] += g[i];
      }
      auto& db = grad_of(1);
      const std::size_t cols = g.dim(1);
      for (std::size_t r = 0; r < g.dim(0); ++r) {
        const T* gr = g.raw() + r * cols;
        for (std::size_t c = 0; c < cols; ++c) db[c] += gr[c];
      }
      break;
    }
    case OpKind::kScale: {
      const T f = static_cast<T>(n.real);
      auto dx = grad_of(0).data();
      for (std::size_t i = 0; i < dx.size(); ++i) dx[i] += f * g[i];
      break;
    }
    case OpKind::kRelu: {
      const auto& x = in(0);
      auto dx = grad_of(0).data();
      for (std::size_t i = 0; i < dx.size(); ++i) dx[i] += x[i] > T{0} ? g[i] : T{0};
      break;
    }
    case OpKind::kLayerNorm: {
      const auto& gain = in(1);
      const std::size_t cols = g.cols();
      const std::size_t rows = g.size() / cols;
      auto& dx = grad_of(0);
      auto& dgain = grad_of(1);
      auto& dbias = grad_of(2);
      std::vector<Acc> dxh(cols);
      for (std::size_t r = 0; r < rows; ++r) {
        const T* gr = g.raw() + r * cols;
        const T* xh = n.saved.raw() + r * cols;
        Acc mean_dxh = 0;
        Acc mean_dxh_xh = 0;
        for (std::size_t c = 0; c < cols; ++c) {
          dgain[c] += gr[c] * xh[c];
          dbias[c] += gr[c];
          dxh[c] = static_cast<Acc>(gr[c]) * gain[c];
          mean_dxh += dxh[c];
          mean_dxh_xh += dxh[c] * xh[c];
        }
        mean_dxh /= static_cast<Acc>(cols);
        mean_dxh_xh /= static_cast<Acc>(cols);
        const Acc rstd = n.saved2[r];
        T* dxr = dx.raw() + r * cols;
        for (std::size_t c = 0; c < cols; ++c) {
          dxr[c] += static_cast<T>(rstd * (dxh[c] - mean_dxh - xh[c] * mean_dxh_xh));
        }
      }
      break;
    }
    case OpKind::kSoftmax: {
      const std::size_t cols = g.cols();
      const std::size_t rows = g.size() / cols;
      auto& dx = grad_of(0);
      for (std::size_t r = 0; r < rows; ++r) {
        const T* y = n.value.raw() + r * cols;
        const T* gr = g.raw() + r * cols;
        Acc dot = 0;
        for (std::size_t c = 0; c < cols; ++c) dot += static_cast<Acc>(gr[c]) * y[c];
        T* dxr = dx.raw() + r * cols;
        for (std::size_t c = 0; c < cols; ++c) dxr[c] += static_cast<T>(y[c] * (gr[c] - dot));
      }
      break;
    }
    case OpKind::kLogSoftmax: {
      const std::size_t cols = g.cols();
      const std::size_t rows = g.size() / cols;
      auto& dx = grad_of(0);
      for (std::size_t r = 0; r < rows; ++r) {
        const T* y = n.value.raw() + r * cols;
        const T* gr = g.raw() + r * cols;
        Acc total = 0;
        for (std::size_t c = 0; c < cols; ++c) total += gr[c];
        T* dxr = dx.raw() + r * cols;
        for (std::size_t c = 0; c < cols; ++c) {
          dxr[c] += static_cast<T>(gr[c] - std::exp(static_cast<Acc>(y[c])) * total);
        }
      }
      break;
    }
    case OpKind::kEmbedding: {
      auto& dt = grad_of(0);
      const std::size_t d = dt.dim(1);
      for (std::size_t i = 0; i < n.ids.size(); ++i) {
        T* dst = dt.raw() + static_cast<std::size_t>(n.ids[i]) * d;
        const T* src = g.raw() + i * d;
        for (std::size_t c = 0; c < d; ++c) dst[c] += src[c];
      }
      break;
    }
    case OpKind::kDropout: {
      auto dx = grad_of(0).data();
      if (!dropout_active(options_, n.real)) {
        for (std::size_t i = 0; i < dx.size(); ++i) dx[i] += g[i];
        break;
      }
      const T keep_scale = static_cast<T>(1.0 / (1.0 - n.real));
      const KeepMask keep_at(counter_key(options_.seed, options_.step, n.stream), n.real);
      for (std::size_t i = 0; i < dx.size(); ++i) {
        if (keep_at(i)) {
          dx[i] += g[i] * keep_scale;
        }
      }
      break;
    }
    case OpKind::kAttention: {
      const AttentionSpec& s = *n.attention;
      const auto& q = in(0);
      const auto& k = in(1);
      const auto& v = in(2);
      auto& dq = grad_of(0);
      auto& dk = grad_of(1);
      auto& dv = grad_of(2);
      const std::size_t d = q.dim(1);
      const std::size_t dh = d / s.heads;
      const Acc scale = 1.0 / std::sqrt(static_cast<Acc>(dh));
      const bool drop = !n.saved2.empty();
      const Acc keep_scale = drop ? 1.0 / (1.0 - s.dropout) : 1.0;
      const std::size_t tq = s.query_len;
      const std::size_t tk = s.key_len;
      std::vector<Acc> dp(tk);
      for (std::size_t b = 0; b < s.batch; ++b) {
        for (std::size_t h = 0; h < s.heads; ++h) {
          for (std::size_t i = 0; i < tq; ++i) {
            const std::size_t limit = std::min(s.key_lengths[b], s.causal ? i + 1 : tk);
            const std::size_t base = ((b * s.heads + h) * tq + i) * tk;
            const T* go = g.raw() + (b * tq + i) * d + h * dh;
            const T* qi = q.raw() + (b * tq + i) * d + h * dh;
            Acc weighted = 0;
            for (std::size_t j = 0; j < limit; ++j) {
              const T* vj = v.raw() + (b * tk + j) * d + h * dh;
              T* dvj = dv.raw() + (b * tk + j) * d + h * dh;
              const T pj = n.saved[base + j];
              const T wj = drop ? n.saved2[base + j] : pj;
              T dot_t = 0;
              for (std::size_t c = 0; c < dh; ++c) dot_t += go[c] * vj[c];
              const Acc dot = dot_t;
              if (wj != T{0}) {
                for (std::size_t c = 0; c < dh; ++c) dvj[c] += wj * go[c];
              }
              // Gradient w.r.t. the pre-dropout probability.
              dp[j] = drop ? (wj != T{0} ? dot * keep_scale : 0.0) : dot;
              weighted += dp[j] * pj;
            }
            T* dqi = dq.raw() + (b * tq + i) * d + h * dh;
            for (std::size_t j = 0; j < limit; ++j) {
              const Acc ds = n.saved[base + j] * (dp[j] - weighted) * scale;
              if (ds == 0.0) continue;
              const T* kj = k.raw() + (b * tk + j) * d + h * dh;
              T* dkj = dk.raw() + (b * tk + j) * d + h * dh;
              const T dst = static_cast<T>(ds);
              for (std::size_t c = 0; c < dh; ++c) {
                dqi[c] += dst * kj[c];
                dkj[c] += dst * qi[c];
              }
            }
          }
        }
      }
      break;
    }
    case OpKind::kSelectRows: {
      auto& dx = grad_of(0);
      const std::size_t cols = g.dim(1);
      for (std::size_t i = 0; i < n.ids.size(); ++i) {
        T* dst = dx.raw() + static_cast<std::size_t>(n.ids[i]) * cols;
        const T* src = g.raw() + i * cols;
        for (std::size_t c = 0; c < cols; ++c) dst[c] += src[c];
      }
      break;
    }
    case OpKind::kSum: {
      auto dx = grad_of(0).data();
      for (T& v : dx) v += g[0];
      break;
    }
    case OpKind::kDotConst: {
      auto dx = grad_of(0).data();
      for (std::size_t i = 0; i < dx.size(); ++i) dx[i] += g[0] * n.saved[i];
      break;
    }
    case OpKind::kSmoothedCrossEntropy: {
      auto& dx = grad_of(0);
      const std::size_t vocab = dx.dim(1);
      const Acc eps = n.real;
      const Acc coef = static_cast<Acc>(g[0]) / n.real2;
      const Acc uniform = eps / static_cast<Acc>(vocab);
      for (std::size_t r = 0; r < n.ids.size(); ++r) {
        const auto t = n.ids[r];
        if (t == n.int_arg) continue;
        const T* pr = n.saved.raw() + r * vocab;
        T* dr = dx.raw() + r * vocab;
        for (std::size_t c = 0; c < vocab; ++c) {
          Acc qv = uniform;
          if (static_cast<std::size_t>(t) == c) qv += 1.0 - eps;
          dr[c] += static_cast<T>(coef * (pr[c] - qv));
        }
      }
      break;
    }
  }
}

template class Graph<float>;
template class Graph<double>;

}  // namespace unitrans::numerics
