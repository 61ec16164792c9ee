//
// Copyright 2026 The tukey-dp Authors
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
#ifndef TUKEY_COMMON_H_
#define TUKEY_COMMON_H_

#include <limits>
#include <stdexcept>
#include <string>

namespace tukeydp {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kInf = std::numeric_limits<double>::infinity();

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid arguments: out-of-range parameters, dimension mismatches.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Malformed input data (CSV parse failures carry a line number).
class DataError : public Error {
 public:
  explicit DataError(const std::string& msg, long line = -1)
      : Error(msg), line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

// Every candidate hyperplane subset was rank deficient.
class DegenerateDataError : public Error {
 public:
  using Error::Error;
};

// The polytope is unbounded in some direction (usually a missing box clip
// or a direction set that does not positively span the space).
class UnboundedError : public Error {
 public:
  using Error::Error;
};

// The polytope has no interior (infeasible or lower-dimensional).
class EmptyPolytopeError : public Error {
 public:
  using Error::Error;
};

// Rejection sampling exceeded its rejection cap.
class ThinPolytopeError : public Error {
 public:
  using Error::Error;
};

// A nested volume estimate observed an inner set not contained in its outer.
class NestingError : public Error {
 public:
  using Error::Error;
};

// A computation would exceed configured memory or combinatorial caps.
class ResourceError : public Error {
 public:
  using Error::Error;
};

}  // namespace tukeydp

#endif  // TUKEY_COMMON_H_
