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

#include "unitrans/units/unit_sequence.hpp"

#include <string>

#include "unitrans/common/error.hpp"

namespace unitrans::units {

UnitSequence collapse(const UnitSequence& units) {
  UnitSequence out;
  out.collapsed = true;
  out.units.reserve(units.units.size());
  for (UnitId u : units.units) {
    if (out.units.empty() || out.units.back() != u) out.units.push_back(u);
  }
  return out;
}

bool has_adjacent_repeats(const std::vector<UnitId>& units) {
  for (std::size_t i = 1; i < units.size(); ++i) {
    if (units[i] == units[i - 1]) return true;
  }
  return false;
}

void validate(const UnitSequence& units, std::size_t k) {
  for (std::size_t i = 0; i < units.units.size(); ++i) {
    const UnitId u = units.units[i];
    if (u < 0 || static_cast<std::size_t>(u) >= k) {
      throw ValidationError("unit " + std::to_string(u) + " at position " + std::to_string(i) +
                            " outside [0, " + std::to_string(k) + ")");
    }
  }
  if (units.collapsed && has_adjacent_repeats(units.units)) {
    throw ValidationError("sequence flagged collapsed contains adjacent repeated units");
  }
}

}  // namespace unitrans::units
