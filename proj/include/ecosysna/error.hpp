// Copyright 2026 The ecosysna Authors.
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

#ifndef ECOSYSNA_ERROR_HPP_
#define ECOSYSNA_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <utility>

namespace ecosysna {

/// Base of every error raised by the library. Anything that is not an
/// IoError maps to exit code 1 in the command line driver.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Stream or file could not be read or written (exit code 2).
class IoError : public Error {
 public:
  using Error::Error;
};

/// A transition record whose domain normalizes to the empty string.
class RejectedRecordError : public Error {
 public:
  explicit RejectedRecordError(std::string raw)
      : Error("unnormalizable domain: '" + raw + "'"), raw_(std::move(raw)) {}
  const std::string& raw() const noexcept { return raw_; }

 private:
  std::string raw_;
};

class NotFoundError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class EmptyDatasetError : public Error {
 public:
  using Error::Error;
};

/// Modularity needs a non-empty graph with positive total weight.
class UndefinedModularityError : public Error {
 public:
  using Error::Error;
};

class SizeLimitError : public Error {
 public:
  using Error::Error;
};

}  // namespace ecosysna

#endif  // ECOSYSNA_ERROR_HPP_
