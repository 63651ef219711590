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

#include "unitrans/synthesis/wav.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

#include "unitrans/common/binary_io.hpp"
#include "unitrans/common/error.hpp"

namespace unitrans::synthesis {

std::string encode_wav(const Waveform& waveform) {
  if (waveform.sample_rate <= 0) throw ValidationError("wav: sample rate must be positive");
  const auto data_bytes = static_cast<std::uint32_t>(waveform.samples.size() * 2);
  std::ostringstream out(std::ios::binary);
  out.write("RIFF", 4);
  io::write_le<std::uint32_t>(out, 36 + data_bytes);
  out.write("WAVEfmt ", 8);
  io::write_le<std::uint32_t>(out, 16);
  io::write_le<std::uint16_t>(out, 1);
  io::write_le<std::uint16_t>(out, 1);
  io::write_le<std::uint32_t>(out, static_cast<std::uint32_t>(waveform.sample_rate));
  io::write_le<std::uint32_t>(out, static_cast<std::uint32_t>(waveform.sample_rate) * 2);
  io::write_le<std::uint16_t>(out, 2);
  io::write_le<std::uint16_t>(out, 16);
  out.write("data", 4);
  io::write_le<std::uint32_t>(out, data_bytes);
  for (float s : waveform.samples) {
    const double c = std::clamp(static_cast<double>(s), -1.0, 1.0);
    io::write_le<std::int16_t>(out, static_cast<std::int16_t>(std::lround(c * 32767.0)));
  }
  return out.str();
}

Waveform decode_wav(const std::string& bytes) {
  std::istringstream in(bytes, std::ios::binary);
  char tag[4];
  const auto expect = [&](const char* want, const char* what) {
    if (!in.read(tag, 4) || !std::equal(tag, tag + 4, want)) {
      throw ValidationError(std::string("wav: missing ") + what);
    }
  };
  expect("RIFF", "RIFF header");
  io::read_le<std::uint32_t>(in, "RIFF size");
  expect("WAVE", "WAVE tag");
  Waveform w;
  bool have_fmt = false;
  while (in.read(tag, 4)) {
    const auto size = io::read_le<std::uint32_t>(in, "chunk size");
    const std::string id(tag, 4);
    if (id == "fmt ") {
      const auto format = io::read_le<std::uint16_t>(in, "format");
      const auto channels = io::read_le<std::uint16_t>(in, "channels");
      const auto rate = io::read_le<std::uint32_t>(in, "sample rate");
      io::read_le<std::uint32_t>(in, "byte rate");
      io::read_le<std::uint16_t>(in, "block align");
      const auto bits = io::read_le<std::uint16_t>(in, "bits per sample");
      if (format != 1 || channels != 1 || bits != 16) {
        throw ValidationError("wav: only 16-bit PCM mono is supported");
      }
      w.sample_rate = static_cast<int>(rate);
      in.ignore(size - 16);
      have_fmt = true;
    } else if (id == "data") {
      if (!have_fmt) throw ValidationError("wav: data chunk before fmt chunk");
      w.samples.resize(size / 2);
      for (auto& s : w.samples) s = static_cast<float>(io::read_le<std::int16_t>(in, "samples") / 32767.0);
      return w;
    } else {
      in.ignore(size + (size & 1));
    }
  }
  throw ValidationError("wav: no data chunk");
}

void write_wav(const std::filesystem::path& path, const Waveform& waveform) {
  const std::string bytes = encode_wav(waveform);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw ValidationError("failed writing " + path.string());
}

Waveform read_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path.string());
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_wav(bytes);
}

}  // namespace unitrans::synthesis
