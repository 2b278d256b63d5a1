// Copyright 2026 The Hearings Authors.
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

#ifndef HEARINGS_ERRORS_HPP_
#define HEARINGS_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hearings {

// Bad input: malformed files, violated invariants, unusable arguments.
// The CLI maps these to exit code 1; anything else is an internal error.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public ValidationError {
 public:
  ParseError(std::string file, std::size_t line, std::string field,
             const std::string& message)
      : ValidationError(file + ":" + std::to_string(line) + ": field '" +
                        field + "': " + message),
        file_(std::move(file)),
        line_(line),
        field_(std::move(field)) {}

  const std::string& file() const { return file_; }
  std::size_t line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  std::string file_;
  std::size_t line_;
  std::string field_;
};

class IoError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NotFoundError : public ValidationError {
 public:
  NotFoundError(std::string key, const std::string& message)
      : ValidationError(message), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

}  // namespace hearings

#endif  // HEARINGS_ERRORS_HPP_
