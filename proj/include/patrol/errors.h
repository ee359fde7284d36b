// Copyright 2026 The Patrol Game Authors
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

#ifndef PATROL_ERRORS_H_
#define PATROL_ERRORS_H_

#include <stdexcept>
#include <string>

namespace patrol {

// Input that violates a documented precondition or invariant. The CLI maps
// these to exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what)
      : std::invalid_argument(what) {}
  virtual const char* kind() const noexcept { return "validation"; }
};

class ParseError : public ValidationError {
 public:
  using ValidationError::ValidationError;
  const char* kind() const noexcept override { return "parse"; }
};

class RateCapViolation : public ValidationError {
 public:
  using ValidationError::ValidationError;
  const char* kind() const noexcept override { return "rate-cap"; }
};

class InfeasibleError : public ValidationError {
 public:
  using ValidationError::ValidationError;
  const char* kind() const noexcept override { return "infeasible"; }
};

class HorizonTooShort : public ValidationError {
 public:
  using ValidationError::ValidationError;
  const char* kind() const noexcept override { return "horizon-too-short"; }
};

// Failures that depend on the sampled data rather than on the inputs alone.
// The CLI maps these to exit code 3.
class RuntimeError : public std::runtime_error {
 public:
  explicit RuntimeError(const std::string& what) : std::runtime_error(what) {}
  virtual const char* kind() const noexcept { return "runtime"; }
};

// A window query would need passes beyond the realization's horizon.
class WindowExceedsHorizon : public RuntimeError {
 public:
  using RuntimeError::RuntimeError;
  const char* kind() const noexcept override {
    return "window-exceeds-horizon";
  }
};

class InsufficientPasses : public RuntimeError {
 public:
  using RuntimeError::RuntimeError;
  const char* kind() const noexcept override { return "insufficient-passes"; }
};

}  // namespace patrol

#endif  // PATROL_ERRORS_H_
