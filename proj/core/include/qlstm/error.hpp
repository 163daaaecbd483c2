// Copyright 2026 The QLSTM Workbench Authors
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

namespace qlstm {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Vector/matrix lengths or model dimensions do not agree.
class ShapeError : public Error {
  public:
    using Error::Error;
};

/// A qubit (or other) index is out of range.
class IndexError : public Error {
  public:
    using Error::Error;
};

/// A requested size exceeds a configured ceiling or is too small.
class SizeError : public Error {
  public:
    using Error::Error;
};

/// Non-finite input where a finite value is required.
class NumericError : public Error {
  public:
    using Error::Error;
};

class ConfigError : public Error {
  public:
    using Error::Error;
};

class DataError : public Error {
  public:
    using Error::Error;
};

class IoError : public Error {
  public:
    using Error::Error;
};

/// Malformed text input. Carries the 1-based line number of the offending row.
class ParseError : public Error {
  public:
    ParseError(const std::string &what, std::size_t line)
        : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
    [[nodiscard]] std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

/// Checkpoint document fails schema or version validation.
class SchemaError : public Error {
  public:
    using Error::Error;
};

/// An object is used in a state that forbids the operation.
class StateError : public Error {
  public:
    using Error::Error;
};

} // namespace qlstm
