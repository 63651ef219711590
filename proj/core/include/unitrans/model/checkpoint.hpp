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
#include <filesystem>
#include <optional>

#include <nlohmann/json.hpp>

#include "unitrans/model/transformer.hpp"
#include "unitrans/training/adam.hpp"

namespace unitrans::model {

inline constexpr std::uint32_t kCheckpointVersion = 1;

template <typename T>
struct Checkpoint {
  TranslationModel<T> model;
  std::optional<training::AdamState<T>> optimizer;
  std::uint64_t step = 0;
  /// Free-form provenance (seed, training config) stored with the weights.
  nlohmann::json metadata = nlohmann::json::object();
};

/// Binary, little-endian: magic, version, config JSON, vocab hash, step,
/// metadata JSON, then named tensors with their shapes and float32 (or
/// float64 for double models) payloads, optional Adam moments, end marker.
template <typename T>
void save_checkpoint(const std::filesystem::path& path, const TranslationModel<T>& model,
                     const training::AdamState<T>* optimizer = nullptr, std::uint64_t step = 0,
                     const nlohmann::json& metadata = nlohmann::json::object());

/// Throws ValidationError on bad magic, version mismatch, vocab-hash mismatch
/// (when expected_vocab_hash is given; both values are reported), or a
/// truncated file.
template <typename T>
Checkpoint<T> load_checkpoint(const std::filesystem::path& path,
                              std::optional<std::uint64_t> expected_vocab_hash = std::nullopt);

}  // namespace unitrans::model
