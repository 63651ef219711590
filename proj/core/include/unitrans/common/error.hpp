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

#include <stdexcept>
#include <string>

namespace unitrans {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input data, files, or violated preconditions on data.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Non-finite values, divergence, or other numeric failures.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Incompatible tensor shapes; raised from graph evaluation with the op id.
class ShapeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

[[noreturn]] void throw_validation(const std::string& message);
[[noreturn]] void throw_numeric(const std::string& message);

}  // namespace unitrans
