// Copyright 2026 The stablecount Authors.
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

namespace stablecount {

/// Base class of every error the library raises on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input. `line()` is 1-based; 0 means "end of input".
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& message)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + message
                       : message),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

/// Structurally invalid arguments (not a permutation, unstable matching...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Two scores of a geometric specification could not be separated.
class TieDetected : public Error {
 public:
  using Error::Error;
};

/// A desk-scale size or enumeration cap was exceeded.
class BoundExceeded : public Error {
 public:
  using Error::Error;
};

/// Two independent routes disagreed, or an invariant that cannot fail did.
class InternalInconsistency : public Error {
 public:
  using Error::Error;
};

}  // namespace stablecount
