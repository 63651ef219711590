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

#include <functional>
#include <vector>

#include "CLI11.hpp"

namespace unitrans::cli {

struct Command {
  CLI::App* app = nullptr;
  std::function<void()> run;
};

/// Adds every subcommand to `app`. Each `run` executes after parsing.
std::vector<Command> register_commands(CLI::App& app);

}  // namespace unitrans::cli
