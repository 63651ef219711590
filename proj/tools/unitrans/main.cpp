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

// unitrans: synthetic direct text-to-speech translation workflow.
//
// Exit status: 0 success, 1 usage error, 2 data or validation error,
// 3 numeric failure.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "settings.hpp"
#include "unitrans/common/error.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Synthetic direct text-to-speech translation: corpus, units, training, decoding, evaluation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "unitrans 0.1.0");
  const auto commands = unitrans::cli::register_commands(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  for (const auto& command : commands) {
    if (!command.app->parsed()) continue;
    const std::string name = command.app->get_name();
    try {
      command.run();
      return 0;
    } catch (const unitrans::cli::UsageError& e) {
      std::cerr << "unitrans " << name << ": usage: " << e.what() << "\n";
      return 1;
    } catch (const unitrans::NumericError& e) {
      std::cerr << "unitrans " << name << ": numeric failure: " << e.what() << "\n";
      return 3;
    } catch (const std::exception& e) {
      std::cerr << "unitrans " << name << ": error: " << e.what() << "\n";
      return 2;
    }
  }
  return 1;
}
