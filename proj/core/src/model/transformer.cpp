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

#include "unitrans/model/transformer.hpp"

#include <cmath>

#include "unitrans/common/error.hpp"
#include "unitrans/common/random.hpp"

namespace unitrans::model {

void ModelConfig::validate() const {
  if (layers_enc == 0 || layers_dec == 0) throw ValidationError("model: need at least one layer per stack");
  if (d_model == 0 || heads == 0 || d_model % heads != 0) {
    throw ValidationError("model: d_model " + std::to_string(d_model) + " not divisible by heads " +
                          std::to_string(heads));
  }
  if (d_ff == 0) throw ValidationError("model: d_ff must be positive");
  if (!(dropout >= 0.0 && dropout < 1.0) || !(attention_dropout >= 0.0 && attention_dropout < 1.0)) {
    throw ValidationError("model: dropout values must lie in [0,1)");
  }
  if (max_positions == 0) throw ValidationError("model: max_positions must be positive");
  if (vocab_size <= corpus::Vocabulary::kNumSpecials) throw ValidationError("model: vocabulary too small");
  if (unit_begin < 0 || static_cast<std::size_t>(unit_begin) + num_units != vocab_size) {
    throw ValidationError("model: unit range must end the vocabulary");
  }
}

ModelConfig config_for(const corpus::Vocabulary& vocab, ModelConfig base) {
  base.vocab_size = vocab.size();
  base.vocab_hash = vocab.hash();
  base.unit_begin = vocab.unit_begin();
  base.num_units = vocab.num_units();
  return base;
}

std::size_t parameter_count(const ModelConfig& c) {
  const std::size_t d = c.d_model, f = c.d_ff;
  const std::size_t ffn = 2 * d * f + f + d;
  const std::size_t enc_layer = 4 * d * d + 4 * d + 2 * 2 * d + ffn;
  const std::size_t dec_layer = 8 * d * d + 8 * d + 3 * 2 * d + ffn;
  return c.vocab_size * d + c.layers_enc * enc_layer + 2 * d + c.layers_dec * dec_layer + 2 * d;
}

void to_json(nlohmann::json& j, const ModelConfig& c) {
  j = nlohmann::json{{"layers_enc", c.layers_enc},
                     {"layers_dec", c.layers_dec},
                     {"d_model", c.d_model},
                     {"d_ff", c.d_ff},
                     {"heads", c.heads},
                     {"dropout", c.dropout},
                     {"attention_dropout", c.attention_dropout},
                     {"max_positions", c.max_positions},
                     {"vocab_size", c.vocab_size},
                     {"vocab_hash", c.vocab_hash},
                     {"unit_begin", c.unit_begin},
                     {"num_units", c.num_units}};
}

void from_json(const nlohmann::json& j, ModelConfig& c) {
  j.at("layers_enc").get_to(c.layers_enc);
  j.at("layers_dec").get_to(c.layers_dec);
  j.at("d_model").get_to(c.d_model);
  j.at("d_ff").get_to(c.d_ff);
  j.at("heads").get_to(c.heads);
  j.at("dropout").get_to(c.dropout);
  j.at("attention_dropout").get_to(c.attention_dropout);
  j.at("max_positions").get_to(c.max_positions);
  j.at("vocab_size").get_to(c.vocab_size);
  j.at("vocab_hash").get_to(c.vocab_hash);
  j.at("unit_begin").get_to(c.unit_begin);
  j.at("num_units").get_to(c.num_units);
}

namespace {

struct ParamShape {
  std::string name;
  numerics::Shape shape;
  enum class Init { kNormal, kZero, kOne, kEmbedding } init;
};

std::vector<ParamShape> layout(const ModelConfig& c) {
  const std::size_t d = c.d_model, f = c.d_ff;
  using I = ParamShape::Init;
  std::vector<ParamShape> out;
  out.push_back({"embed", {c.vocab_size, d}, I::kEmbedding});
  auto attn = [&](const std::string& p) {
    for (const char* w : {"q", "k", "v", "o"}) {
      out.push_back({p + ".w" + w, {d, d}, I::kNormal});
      out.push_back({p + ".b" + w, {d}, I::kZero});
    }
  };
  auto ln = [&](const std::string& p) {
    out.push_back({p + ".g", {d}, I::kOne});
    out.push_back({p + ".b", {d}, I::kZero});
  };
  auto ffn = [&](const std::string& p) {
    out.push_back({p + ".w1", {d, f}, I::kNormal});
    out.push_back({p + ".b1", {f}, I::kZero});
    out.push_back({p + ".w2", {f, d}, I::kNormal});
    out.push_back({p + ".b2", {d}, I::kZero});
  };
  for (std::size_t l = 0; l < c.layers_enc; ++l) {
    const std::string p = "enc." + std::to_string(l);
    ln(p + ".ln1");
    attn(p + ".attn");
    ln(p + ".ln2");
    ffn(p + ".ffn");
  }
  ln("enc.ln");
  for (std::size_t l = 0; l < c.layers_dec; ++l) {
    const std::string p = "dec." + std::to_string(l);
    ln(p + ".ln1");
    attn(p + ".self");
    ln(p + ".ln2");
    attn(p + ".cross");
    ln(p + ".ln3");
    ffn(p + ".ffn");
  }
  ln("dec.ln");
  return out;
}

template <typename T>
Tensor<T> sinusoids(std::size_t positions, std::size_t d) {
  Tensor<T> table({positions, d});
  for (std::size_t pos = 0; pos < positions; ++pos) {
    for (std::size_t i = 0; i < d; i += 2) {
      const double rate = std::pow(10000.0, -static_cast<double>(i) / static_cast<double>(d));
      table.at(pos, i) = static_cast<T>(std::sin(static_cast<double>(pos) * rate));
      if (i + 1 < d) table.at(pos, i + 1) = static_cast<T>(std::cos(static_cast<double>(pos) * rate));
    }
  }
  return table;
}

std::uint64_t stream_id(const std::string& site) { return fnv1a(site); }

}  // namespace

template <typename T>
TranslationModel<T> TranslationModel<T>::init(const ModelConfig& config, std::uint64_t seed) {
  config.validate();
  TranslationModel m;
  m.config_ = config;
  m.positions_ = sinusoids<T>(config.max_positions, config.d_model);
  for (const auto& p : layout(config)) {
    Tensor<T> t(p.shape);
    Rng rng(derive_seed(seed, "init/" + p.name));
    switch (p.init) {
      case ParamShape::Init::kZero:
        break;
      case ParamShape::Init::kOne:
        t.fill(T{1});
        break;
      case ParamShape::Init::kEmbedding: {
        const double std = 0.25 / std::sqrt(static_cast<double>(config.d_model));
        for (T& v : t.data()) v = static_cast<T>(rng.normal() * std);
        break;
      }
      case ParamShape::Init::kNormal: {
        const double std = std::sqrt(2.0 / static_cast<double>(p.shape[0] + p.shape[1]));
        for (T& v : t.data()) v = static_cast<T>(rng.normal() * std);
        break;
      }
    }
    m.params_.emplace(p.name, std::move(t));
  }
  return m;
}

template <typename T>
TranslationModel<T> TranslationModel<T>::from_parameters(const ModelConfig& config,
                                                         ParameterSet<T> params) {
  config.validate();
  const auto expected = layout(config);
  if (params.size() != expected.size()) {
    throw ValidationError("model: expected " + std::to_string(expected.size()) + " parameter tensors, got " +
                          std::to_string(params.size()));
  }
  for (const auto& p : expected) {
    const auto it = params.find(p.name);
    if (it == params.end()) throw ValidationError("model: missing parameter " + p.name);
    if (it->second.shape() != p.shape) {
      throw ValidationError("model: parameter " + p.name + " has shape " +
                            numerics::shape_string(it->second.shape()) + ", expected " +
                            numerics::shape_string(p.shape));
    }
    if (!it->second.all_finite()) throw NumericError("model: parameter " + p.name + " is not finite");
  }
  TranslationModel m;
  m.config_ = config;
  m.params_ = std::move(params);
  m.positions_ = sinusoids<T>(config.max_positions, config.d_model);
  return m;
}

template <typename T>
std::size_t TranslationModel<T>::num_parameters() const {
  std::size_t n = 0;
  for (const auto& [name, t] : params_) n += t.size();
  return n;
}

template <typename T>
NodeId TranslationModel<T>::param(Graph<T>& g, const std::string& name) const {
  return g.parameter(name, params_.at(name));
}

template <typename T>
void TranslationModel<T>::check_tokens(const std::vector<TokenId>& tokens, std::size_t len,
                                       const char* what) const {
  if (len > config_.max_positions) {
    throw ValidationError(std::string("model: ") + what + " length " + std::to_string(len) +
                          " exceeds max_positions " + std::to_string(config_.max_positions));
  }
  for (TokenId t : tokens) {
    if (t < 0 || static_cast<std::size_t>(t) >= config_.vocab_size) {
      throw ValidationError(std::string("model: ") + what + " token " + std::to_string(t) +
                            " outside vocabulary");
    }
  }
}

template <typename T>
NodeId TranslationModel<T>::embed(Graph<T>& g, const std::vector<TokenId>& tokens, std::size_t batch,
                                  std::size_t len, std::uint64_t stream) const {
  const std::size_t d = config_.d_model;
  NodeId x = g.embedding(param(g, "embed"), tokens);
  x = g.scale(x, std::sqrt(static_cast<double>(d)));
  Tensor<T> pos({batch * len, d});
  for (std::size_t b = 0; b < batch; ++b) {
    for (std::size_t t = 0; t < len; ++t) {
      std::copy_n(positions_.raw() + t * d, d, pos.raw() + (b * len + t) * d);
    }
  }
  x = g.add(x, g.constant(std::move(pos)));
  return g.dropout(x, config_.dropout, stream);
}

template <typename T>
NodeId TranslationModel<T>::norm(Graph<T>& g, const std::string& prefix, NodeId x) const {
  return g.layer_norm(x, param(g, prefix + ".g"), param(g, prefix + ".b"));
}

template <typename T>
NodeId TranslationModel<T>::attention_block(Graph<T>& g, const std::string& prefix, NodeId query_in,
                                            NodeId memory, const numerics::AttentionSpec& spec) const {
  auto proj = [&](NodeId x, const char* w) {
    return g.add_row(g.matmul(x, param(g, prefix + ".w" + w)), param(g, prefix + ".b" + w));
  };
  const NodeId q = proj(query_in, "q");
  const NodeId k = proj(memory, "k");
  const NodeId v = proj(memory, "v");
  numerics::AttentionSpec s = spec;
  s.dropout = config_.attention_dropout;
  s.dropout_stream = stream_id(prefix + ".attn_dropout");
  const NodeId a = g.attention(q, k, v, std::move(s));
  return proj(a, "o");
}

template <typename T>
NodeId TranslationModel<T>::ffn_block(Graph<T>& g, const std::string& prefix, NodeId x) const {
  NodeId h = g.add_row(g.matmul(x, param(g, prefix + ".w1")), param(g, prefix + ".b1"));
  h = g.relu(h);
  return g.add_row(g.matmul(h, param(g, prefix + ".w2")), param(g, prefix + ".b2"));
}

template <typename T>
NodeId TranslationModel<T>::build_encoder(Graph<T>& g, const std::vector<TokenId>& source,
                                          std::size_t batch, std::size_t source_len,
                                          const std::vector<std::size_t>& source_lengths) const {
  check_tokens(source, source_len, "source");
  if (source.size() != batch * source_len || source_lengths.size() != batch) {
    throw ValidationError("model: source batch geometry mismatch");
  }
  NodeId x = embed(g, source, batch, source_len, stream_id("enc.embed"));
  numerics::AttentionSpec spec;
  spec.batch = batch;
  spec.query_len = source_len;
  spec.key_len = source_len;
  spec.heads = config_.heads;
  spec.key_lengths = source_lengths;
  for (std::size_t l = 0; l < config_.layers_enc; ++l) {
    const std::string p = "enc." + std::to_string(l);
    const NodeId h = norm(g, p + ".ln1", x);
    NodeId a = attention_block(g, p + ".attn", h, h, spec);
    x = g.add(x, g.dropout(a, config_.dropout, stream_id(p + ".attn_out")));
    NodeId f = ffn_block(g, p + ".ffn", norm(g, p + ".ln2", x));
    x = g.add(x, g.dropout(f, config_.dropout, stream_id(p + ".ffn_out")));
  }
  return norm(g, "enc.ln", x);
}

template <typename T>
NodeId TranslationModel<T>::build_decoder(Graph<T>& g, NodeId memory,
                                          const std::vector<std::size_t>& source_lengths,
                                          std::size_t source_len, const std::vector<TokenId>& target_in,
                                          std::size_t batch, std::size_t target_len,
                                          const std::vector<std::size_t>& target_lengths,
                                          const std::vector<std::int32_t>& rows) const {
  check_tokens(target_in, target_len, "target");
  if (target_in.size() != batch * target_len || target_lengths.size() != batch ||
      source_lengths.size() != batch) {
    throw ValidationError("model: target batch geometry mismatch");
  }
  NodeId x = embed(g, target_in, batch, target_len, stream_id("dec.embed"));
  numerics::AttentionSpec self_spec;
  self_spec.batch = batch;
  self_spec.query_len = target_len;
  self_spec.key_len = target_len;
  self_spec.heads = config_.heads;
  self_spec.key_lengths = target_lengths;
  self_spec.causal = true;
  numerics::AttentionSpec cross_spec;
  cross_spec.batch = batch;
  cross_spec.query_len = target_len;
  cross_spec.key_len = source_len;
  cross_spec.heads = config_.heads;
  cross_spec.key_lengths = source_lengths;
  for (std::size_t l = 0; l < config_.layers_dec; ++l) {
    const std::string p = "dec." + std::to_string(l);
    const NodeId h = norm(g, p + ".ln1", x);
    NodeId a = attention_block(g, p + ".self", h, h, self_spec);
    x = g.add(x, g.dropout(a, config_.dropout, stream_id(p + ".self_out")));
    NodeId c = attention_block(g, p + ".cross", norm(g, p + ".ln2", x), memory, cross_spec);
    x = g.add(x, g.dropout(c, config_.dropout, stream_id(p + ".cross_out")));
    NodeId f = ffn_block(g, p + ".ffn", norm(g, p + ".ln3", x));
    x = g.add(x, g.dropout(f, config_.dropout, stream_id(p + ".ffn_out")));
  }
  x = norm(g, "dec.ln", x);
  if (!rows.empty()) x = g.select_rows(x, rows);
  return g.matmul_bt(x, param(g, "embed"));
}

template <typename T>
NodeId TranslationModel<T>::build_logits(Graph<T>& g, const corpus::Batch& batch) const {
  const NodeId memory =
      build_encoder(g, batch.source, batch.size, batch.source_len, batch.source_lengths);
  return build_decoder(g, memory, batch.source_lengths, batch.source_len, batch.target_in,
                       batch.size, batch.target_len, batch.target_lengths);
}

template <typename T>
Tensor<T> TranslationModel<T>::forward_teacher_forced(const std::vector<TokenId>& source,
                                                      const std::vector<TokenId>& target_in) const {
  if (source.empty() || target_in.empty()) throw ValidationError("model: empty sequence");
  Graph<T> g;
  const NodeId memory = build_encoder(g, source, 1, source.size(), {source.size()});
  const NodeId logits = build_decoder(g, memory, {source.size()}, source.size(), target_in, 1,
                                      target_in.size(), {target_in.size()});
  g.forward();
  return g.value(logits);
}

template <typename T>
Tensor<T> TranslationModel<T>::encode(const std::vector<TokenId>& source) const {
  if (source.empty()) throw ValidationError("model: empty source");
  Graph<T> g;
  const NodeId memory = build_encoder(g, source, 1, source.size(), {source.size()});
  g.forward();
  return g.value(memory);
}

template <typename T>
Tensor<T> TranslationModel<T>::next_logits(const Tensor<T>& memory,
                                           const std::vector<std::vector<TokenId>>& prefixes) const {
  if (prefixes.empty()) throw ValidationError("model: no prefixes");
  const std::size_t n = prefixes.size();
  const std::size_t len = prefixes.front().size();
  const std::size_t src_len = memory.dim(0);
  const std::size_t d = config_.d_model;
  std::vector<TokenId> flat;
  flat.reserve(n * len);
  for (const auto& p : prefixes) {
    if (p.size() != len || len == 0) throw ValidationError("model: prefixes must share a nonzero length");
    flat.insert(flat.end(), p.begin(), p.end());
  }
  Tensor<T> tiled({n * src_len, d});
  for (std::size_t b = 0; b < n; ++b) {
    std::copy_n(memory.raw(), src_len * d, tiled.raw() + b * src_len * d);
  }
  std::vector<std::int32_t> rows(n);
  for (std::size_t b = 0; b < n; ++b) rows[b] = static_cast<std::int32_t>(b * len + len - 1);
  Graph<T> g;
  const NodeId mem = g.constant(std::move(tiled));
  const NodeId logits = build_decoder(g, mem, std::vector<std::size_t>(n, src_len), src_len, flat, n,
                                      len, std::vector<std::size_t>(n, len), rows);
  g.forward();
  return g.value(logits);
}

template <typename T>
template <typename U>
TranslationModel<U> TranslationModel<T>::cast() const {
  ParameterSet<U> params;
  for (const auto& [name, t] : params_) {
    std::vector<U> data(t.data().begin(), t.data().end());
    params.emplace(name, Tensor<U>(t.shape(), std::move(data)));
  }
  return TranslationModel<U>::from_parameters(config_, std::move(params));
}

template class TranslationModel<float>;
template class TranslationModel<double>;
template TranslationModel<double> TranslationModel<float>::cast<double>() const;
template TranslationModel<float> TranslationModel<double>::cast<float>() const;
template TranslationModel<float> TranslationModel<float>::cast<float>() const;
template TranslationModel<double> TranslationModel<double>::cast<double>() const;

}  // namespace unitrans::model
