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

#include <fstream>
#include <sstream>
#include <string>

#include "unitrans/common/binary_io.hpp"
#include "unitrans/common/error.hpp"
#include "unitrans/units/kmeans.hpp"

namespace unitrans::units {

namespace {
constexpr const char* kMagic = "unitrans-codebook";
constexpr int kVersion = 1;
}  // namespace

void write_codebook(const Codebook& codebook, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot open " + path.string() + " for writing");
  std::ostringstream header;
  header.precision(17);
  header << kMagic << " v" << kVersion << " k=" << codebook.k << " dim=" << codebook.dim
         << " seed=" << codebook.seed << " iterations=" << codebook.iterations
         << " inertia=" << codebook.inertia << "\n";
  out << header.str();
  for (float v : codebook.centroids) io::write_le(out, v);
  if (!out) throw ValidationError("failed writing " + path.string());
}

Codebook read_codebook(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open codebook " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("empty codebook file " + path.string());
  std::istringstream fields(line);
  std::string magic, version;
  fields >> magic >> version;
  if (magic != kMagic) throw ValidationError(path.string() + " is not a codebook file");
  if (version != "v" + std::to_string(kVersion)) {
    throw ValidationError("codebook version " + version + " unsupported (expected v" +
                          std::to_string(kVersion) + ")");
  }
  Codebook cb;
  std::string kv;
  while (fields >> kv) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ValidationError("malformed codebook header field " + kv);
    const std::string key = kv.substr(0, eq);
    const std::string value = kv.substr(eq + 1);
    try {
      if (key == "k") cb.k = std::stoull(value);
      else if (key == "dim") cb.dim = std::stoull(value);
      else if (key == "seed") cb.seed = std::stoull(value);
      else if (key == "iterations") cb.iterations = std::stoull(value);
      else if (key == "inertia") cb.inertia = std::stod(value);
    } catch (const std::exception&) {
      throw ValidationError("malformed codebook header value " + kv);
    }
  }
  if (cb.k == 0 || cb.dim == 0) throw ValidationError("codebook header lacks k or dim");
  cb.centroids.resize(cb.k * cb.dim);
  for (float& v : cb.centroids) v = io::read_le<float>(in, "codebook centroids");
  return cb;
}

}  // namespace unitrans::units
