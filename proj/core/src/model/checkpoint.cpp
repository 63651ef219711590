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

#include "unitrans/model/checkpoint.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "unitrans/common/binary_io.hpp"
#include "unitrans/common/error.hpp"

namespace unitrans::model {

namespace {

constexpr char kMagic[8] = {'U', 'T', 'R', 'N', 'C', 'K', 'P', 'T'};
constexpr std::uint32_t kEndMarker = 0x21444e45;  // "END!"

template <typename T>
void write_tensor_payload(std::ostream& out, const Tensor<T>& t) {
  for (T v : t.data()) io::write_le(out, v);
}

template <typename T>
Tensor<T> read_tensor_payload(std::istream& in, const numerics::Shape& shape, std::uint8_t width,
                              const char* what) {
  Tensor<T> t(shape);
  for (T& v : t.data()) {
    v = width == 4 ? static_cast<T>(io::read_le<float>(in, what))
                   : static_cast<T>(io::read_le<double>(in, what));
  }
  return t;
}

}  // namespace

template <typename T>
void save_checkpoint(const std::filesystem::path& path, const TranslationModel<T>& model,
                     const training::AdamState<T>* optimizer, std::uint64_t step,
                     const nlohmann::json& metadata) {
  std::ostringstream out(std::ios::binary);
  out.write(kMagic, sizeof(kMagic));
  io::write_le<std::uint32_t>(out, kCheckpointVersion);
  io::write_string(out, nlohmann::json(model.config()).dump());
  io::write_le<std::uint64_t>(out, model.config().vocab_hash);
  io::write_le<std::uint64_t>(out, step);
  io::write_string(out, metadata.dump());
  io::write_le<std::uint8_t>(out, static_cast<std::uint8_t>(sizeof(T)));
  const auto& params = model.parameters();
  io::write_le<std::uint32_t>(out, static_cast<std::uint32_t>(params.size()));
  for (const auto& [name, t] : params) {
    io::write_string(out, name);
    io::write_le<std::uint32_t>(out, static_cast<std::uint32_t>(t.rank()));
    for (std::size_t d : t.shape()) io::write_le<std::uint64_t>(out, d);
    write_tensor_payload(out, t);
  }
  io::write_le<std::uint8_t>(out, optimizer != nullptr ? 1 : 0);
  if (optimizer != nullptr) {
    io::write_le<std::uint64_t>(out, optimizer->t);
    for (const auto& [name, t] : params) {
      write_tensor_payload(out, optimizer->m.at(name));
      write_tensor_payload(out, optimizer->v.at(name));
    }
  }
  io::write_le<std::uint32_t>(out, kEndMarker);

  const std::string bytes = out.str();
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw ValidationError("cannot write checkpoint " + path.string());
  file.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!file) throw ValidationError("failed writing checkpoint " + path.string());
}

template <typename T>
Checkpoint<T> load_checkpoint(const std::filesystem::path& path,
                              std::optional<std::uint64_t> expected_vocab_hash) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open checkpoint " + path.string());
  char magic[sizeof(kMagic)];
  if (!in.read(magic, sizeof(magic)) || !std::equal(magic, magic + sizeof(magic), kMagic)) {
    throw ValidationError(path.string() + " is not a checkpoint (bad magic or truncated)");
  }
  const auto version = io::read_le<std::uint32_t>(in, "checkpoint version");
  if (version != kCheckpointVersion) {
    throw ValidationError("checkpoint version " + std::to_string(version) + " != supported " +
                          std::to_string(kCheckpointVersion));
  }
  ModelConfig config;
  try {
    config = nlohmann::json::parse(io::read_string(in, "checkpoint config")).get<ModelConfig>();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("checkpoint config is malformed: ") + e.what());
  }
  const auto vocab_hash = io::read_le<std::uint64_t>(in, "vocab hash");
  if (vocab_hash != config.vocab_hash) {
    throw ValidationError("checkpoint header vocab hash disagrees with its config");
  }
  if (expected_vocab_hash && *expected_vocab_hash != vocab_hash) {
    throw ValidationError("vocab hash mismatch: checkpoint has " + std::to_string(vocab_hash) +
                          ", expected " + std::to_string(*expected_vocab_hash));
  }
  Checkpoint<T> ck;
  ck.step = io::read_le<std::uint64_t>(in, "step");
  try {
    ck.metadata = nlohmann::json::parse(io::read_string(in, "metadata"));
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("checkpoint metadata is malformed: ") + e.what());
  }
  const auto width = io::read_le<std::uint8_t>(in, "dtype");
  if (width != 4 && width != 8) throw ValidationError("checkpoint has unknown dtype width");
  const auto count = io::read_le<std::uint32_t>(in, "tensor count");
  ParameterSet<T> params;
  std::vector<std::pair<std::string, numerics::Shape>> order;
  for (std::uint32_t i = 0; i < count; ++i) {
    std::string name = io::read_string(in, "tensor name", 4096);
    const auto rank = io::read_le<std::uint32_t>(in, "tensor rank");
    if (rank > 4) throw ValidationError("checkpoint tensor " + name + " has implausible rank");
    numerics::Shape shape(rank);
    for (auto& d : shape) d = io::read_le<std::uint64_t>(in, "tensor shape");
    if (numerics::shape_size(shape) > (std::size_t{1} << 28)) {
      throw ValidationError("checkpoint tensor " + name + " is implausibly large");
    }
    params.emplace(name, read_tensor_payload<T>(in, shape, width, "tensor payload"));
    order.emplace_back(std::move(name), std::move(shape));
  }
  const auto has_opt = io::read_le<std::uint8_t>(in, "optimizer flag");
  if (has_opt == 1) {
    training::AdamState<T> state;
    state.t = io::read_le<std::uint64_t>(in, "optimizer step");
    for (const auto& [name, shape] : order) {
      state.m.emplace(name, read_tensor_payload<T>(in, shape, width, "optimizer moments"));
      state.v.emplace(name, read_tensor_payload<T>(in, shape, width, "optimizer moments"));
    }
    ck.optimizer = std::move(state);
  } else if (has_opt != 0) {
    throw ValidationError("checkpoint optimizer flag is corrupt");
  }
  if (io::read_le<std::uint32_t>(in, "end marker") != kEndMarker) {
    throw ValidationError("checkpoint end marker missing; file is corrupt");
  }
  ck.model = TranslationModel<T>::from_parameters(config, std::move(params));
  return ck;
}

template void save_checkpoint(const std::filesystem::path&, const TranslationModel<float>&,
                              const training::AdamState<float>*, std::uint64_t, const nlohmann::json&);
template void save_checkpoint(const std::filesystem::path&, const TranslationModel<double>&,
                              const training::AdamState<double>*, std::uint64_t, const nlohmann::json&);
template Checkpoint<float> load_checkpoint(const std::filesystem::path&, std::optional<std::uint64_t>);
template Checkpoint<double> load_checkpoint(const std::filesystem::path&, std::optional<std::uint64_t>);

}  // namespace unitrans::model
