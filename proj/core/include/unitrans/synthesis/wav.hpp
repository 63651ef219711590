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
#include <string>

#include "unitrans/common/waveform.hpp"

namespace unitrans::synthesis {

/// RIFF/WAVE, 16-bit PCM, mono, little-endian. Samples are clamped to
/// [-1, 1] and rounded to the nearest 16-bit level.
std::string encode_wav(const Waveform& waveform);
Waveform decode_wav(const std::string& bytes);

void write_wav(const std::filesystem::path& path, const Waveform& waveform);
Waveform read_wav(const std::filesystem::path& path);

}  // namespace unitrans::synthesis
