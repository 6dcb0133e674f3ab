// Copyright 2026 The ladderqed Authors
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
#include <utility>

namespace ladderqed {

/// Base of all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid input: bad parameter, malformed config, unsupported grid.
/// `field()` names the offending quantity when there is one.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what, std::string field = {})
      : Error(what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// A numerical routine failed or produced a state outside tolerance.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// The Liouvillian has more than one zero mode, so the steady state is not unique.
class DegenerateSteadyStateError : public NumericalError {
 public:
  explicit DegenerateSteadyStateError(const std::string& what, int null_dimension)
      : NumericalError(what), null_dimension_(null_dimension) {}

  int null_dimension() const noexcept { return null_dimension_; }

 private:
  int null_dimension_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace ladderqed
