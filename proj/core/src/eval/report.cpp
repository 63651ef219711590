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

#include "unitrans/eval/report.hpp"

#include <cstdio>
#include <sstream>

#include "unitrans/common/error.hpp"

namespace unitrans::eval {

TierAggregates tier_report(const std::map<std::string, double>& per_language,
                           const std::map<std::string, Tier>& tiers) {
  if (per_language.empty()) throw ValidationError("tier_report: no languages");
  std::map<Tier, std::pair<double, std::size_t>> sums;
  double total = 0.0;
  for (const auto& [lang, score] : per_language) {
    const auto it = tiers.find(lang);
    if (it == tiers.end()) throw ValidationError("tier_report: language " + lang + " has no tier");
    sums[it->second].first += score;
    ++sums[it->second].second;
    total += score;
  }
  TierAggregates out;
  for (const auto& [tier, s] : sums) out.tiers[tier] = s.first / static_cast<double>(s.second);
  out.overall = total / static_cast<double>(per_language.size());
  return out;
}

EvalReport make_report(std::map<std::string, LanguageResult> languages,
                       const std::map<std::string, Tier>& tiers) {
  EvalReport r;
  std::map<std::string, double> scores;
  for (const auto& [lang, res] : languages) scores[lang] = res.bleu.bleu;
  r.aggregates = tier_report(scores, tiers);
  r.languages = std::move(languages);
  return r;
}

nlohmann::json report_json(const EvalReport& report) {
  nlohmann::json j;
  j["languages"] = nlohmann::json::object();
  for (const auto& [lang, res] : report.languages) {
    const auto& b = res.bleu;
    j["languages"][lang] = {{"bleu", b.bleu},
                            {"p1", b.precisions[0]},
                            {"p2", b.precisions[1]},
                            {"p3", b.precisions[2]},
                            {"p4", b.precisions[3]},
                            {"bp", b.brevity_penalty},
                            {"n_examples", res.n_examples}};
  }
  j["tiers"] = nlohmann::json::object();
  for (Tier t : {Tier::kHigh, Tier::kMedium, Tier::kLow}) {
    const auto it = report.aggregates.tiers.find(t);
    j["tiers"][corpus::tier_name(t)] =
        it == report.aggregates.tiers.end() ? nlohmann::json(nullptr) : nlohmann::json(it->second);
  }
  j["overall"] = report.aggregates.overall;
  return j;
}

std::string report_text(const EvalReport& report) {
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof(line), "%-10s %8s %7s %7s %7s %7s %6s %6s\n", "language", "bleu", "p1",
                "p2", "p3", "p4", "bp", "n");
  out << line;
  for (const auto& [lang, res] : report.languages) {
    const auto& b = res.bleu;
    std::snprintf(line, sizeof(line), "%-10s %8.2f %7.4f %7.4f %7.4f %7.4f %6.3f %6zu\n", lang.c_str(),
                  b.bleu, b.precisions[0], b.precisions[1], b.precisions[2], b.precisions[3],
                  b.brevity_penalty, res.n_examples);
    out << line;
  }
  for (const auto& [tier, mean] : report.aggregates.tiers) {
    std::snprintf(line, sizeof(line), "tier %-5s %8.2f\n", corpus::tier_name(tier), mean);
    out << line;
  }
  std::snprintf(line, sizeof(line), "overall    %8.2f\n", report.aggregates.overall);
  out << line;
  return out.str();
}

}  // namespace unitrans::eval
