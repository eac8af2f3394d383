// Copyright 2026 The uc-hybrid Authors
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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace uc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input document. `field()` names the offending key path.
class ParseError : public Error {
 public:
  ParseError(std::string field, const std::string& what)
      : Error("parse error at '" + field + "': " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Well-formed input that breaks a domain invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// The committed capacity of every unit cannot cover load plus reserve at
/// time index `step()` (0-based; messages use 1-based indices).
class InfeasibleInstanceError : public ValidationError {
 public:
  InfeasibleInstanceError(std::size_t step, const std::string& what)
      : ValidationError(what), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class QubitLimitError : public Error {
 public:
  using Error::Error;
};

/// A solver finished without any schedule that passes the audit.
class InfeasibleSolutionError : public Error {
 public:
  using Error::Error;
};

/// Problem size exceeds a configured solver limit.
class LimitError : public Error {
 public:
  using Error::Error;
};

/// Raised when the derivative-free minimizer cannot proceed. Carries the
/// best point seen before the failure.
class OptimError : public Error {
 public:
  OptimError(const std::string& what, std::vector<double> x_best, double f_best)
      : Error(what), x_best_(std::move(x_best)), f_best_(f_best) {}
  const std::vector<double>& x_best() const noexcept { return x_best_; }
  double f_best() const noexcept { return f_best_; }

 private:
  std::vector<double> x_best_;
  double f_best_;
};

}  // namespace uc
