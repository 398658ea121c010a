//
// Copyright 2026 The Microslice Authors
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
//

#ifndef MICROSLICE_ERROR_H_
#define MICROSLICE_ERROR_H_

#include <stdexcept>
#include <string>

namespace microslice {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input: schema mismatch, malformed files, invalid parameters.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Filesystem failures.
class IoError : public Error {
 public:
  using Error::Error;
};

// A contingency table with fewer than two observed values on one side.
class DegenerateDomainError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

// The requested privacy level cannot be reached, e.g. the unsplit table is
// already not l-diverse.
class UnsatisfiableError : public Error {
 public:
  UnsatisfiableError(const std::string& what, double worst_probability)
      : Error(what), worst_probability_(worst_probability) {}

  double worst_probability() const { return worst_probability_; }

 private:
  double worst_probability_;
};

// An enumeration would exceed its configured resource cap.
class CapExceededError : public Error {
 public:
  using Error::Error;
};

}  // namespace microslice

#endif  // MICROSLICE_ERROR_H_
