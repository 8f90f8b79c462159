// Copyright 2026 The mlprior Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MLPRIOR_ERRORS_H_
#define MLPRIOR_ERRORS_H_

#include <stdexcept>
#include <string>

namespace mlprior {

// All library failures derive from Error. The CLI maps InputError subclasses
// and SolverError to distinct exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InputError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public InputError {
 public:
  using InputError::InputError;
};

class InvalidArgument : public InputError {
 public:
  using InputError::InputError;
};

class ParseError : public InputError {
 public:
  ParseError(const std::string& source, long line, const std::string& what)
      : InputError(source + ":" + std::to_string(line) + ": " + what),
        line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

// Model-file problems: unsupported version, checksum mismatch.
class FormatError : public InputError {
 public:
  using InputError::InputError;
};

class SolverError : public Error {
 public:
  using Error::Error;
};

}  // namespace mlprior

#endif  // MLPRIOR_ERRORS_H_
