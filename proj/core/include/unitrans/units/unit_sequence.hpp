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
#include <vector>

namespace unitrans::units {

using UnitId = std::int32_t;

/// Discrete acoustic-unit IDs in [0, k).
struct UnitSequence {
  std::vector<UnitId> units;
  /// When true, no two adjacent units are equal.
  bool collapsed = false;

  std::size_t size() const { return units.size(); }
  bool empty() const { return units.empty(); }
  bool operator==(const UnitSequence&) const = default;
};

/// Replaces each run of equal adjacent units by one occurrence:
/// 1 1 2 2 3 3 -> 1 2 3.
UnitSequence collapse(const UnitSequence& units);

bool has_adjacent_repeats(const std::vector<UnitId>& units);

/// Throws ValidationError if an ID is outside [0, k) or if the sequence
/// claims to be collapsed but is not.
void validate(const UnitSequence& units, std::size_t k);

}  // namespace unitrans::units
