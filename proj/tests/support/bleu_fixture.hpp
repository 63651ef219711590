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

#include <string>
#include <vector>

namespace unitrans::testing {

/// Twenty pinned reference sentences for the degradation fixture.
inline const std::vector<std::string>& degradation_references() {
  static const std::vector<std::string> refs{
      "the old man walked slowly to the river bank",
      "a small bird sang on the branch near my window",
      "we bought fresh bread and milk at the market",
      "she opened the door and looked into the dark room",
      "the children played in the park until sunset",
      "my brother reads a new book every single week",
      "the train to the city leaves at seven tonight",
      "they painted the fence a bright shade of green",
      "he forgot his keys on the kitchen table again",
      "rain fell softly on the roof all night long",
      "the teacher wrote three questions on the board",
      "our neighbours keep two cats and a lazy dog",
      "the coffee was too hot to drink right away",
      "a cold wind blew across the empty field today",
      "she sent a long letter to her friend abroad",
      "the museum opens early on the first sunday",
      "we watched the boats sail past the harbour wall",
      "his garden is full of roses and tall sunflowers",
      "the baker sold every loaf before nine in the morning",
      "a quiet street leads down to the old stone bridge"};
  return refs;
}

/// Replaces the first `count` words of every sentence with a token that
/// never occurs in the references.
inline std::vector<std::string> corrupt_words(const std::vector<std::string>& sentences, std::size_t count) {
  std::vector<std::string> out;
  for (const auto& s : sentences) {
    std::string result, word;
    std::size_t index = 0;
    const auto flush = [&]() {
      if (word.empty()) return;
      if (!result.empty()) result += ' ';
      result += index < count ? "xq" + std::to_string(index) : word;
      word.clear();
      ++index;
    };
    for (char c : s) {
      if (c == ' ') flush();
      else word += c;
    }
    flush();
    out.push_back(result);
  }
  return out;
}

}  // namespace unitrans::testing
