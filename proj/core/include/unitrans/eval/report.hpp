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
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "unitrans/corpus/corpus.hpp"
#include "unitrans/eval/bleu.hpp"

namespace unitrans::eval {

using corpus::Tier;

struct LanguageResult {
  BleuReport bleu;
  std::size_t n_examples = 0;
};

struct TierAggregates {
  /// Mean BLEU per tier; tiers without languages are absent.
  std::map<Tier, double> tiers;
  double overall = 0.0;
};

/// Arithmetic means per tier and over all languages. Every language must
/// appear in the tier map.
TierAggregates tier_report(const std::map<std::string, double>& per_language,
                           const std::map<std::string, Tier>& tiers);

struct EvalReport {
  std::map<std::string, LanguageResult> languages;
  TierAggregates aggregates;
};

EvalReport make_report(std::map<std::string, LanguageResult> languages,
                       const std::map<std::string, Tier>& tiers);

/// {languages: {tag: {bleu, p1..p4, bp, n_examples}}, tiers: {high, medium,
/// low}, overall}; absent tiers are null.
nlohmann::json report_json(const EvalReport& report);

/// Aligned columns for people.
std::string report_text(const EvalReport& report);

}  // namespace unitrans::eval
