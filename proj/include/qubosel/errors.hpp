// Copyright 2026 The qubosel Authors
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

namespace qubosel {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// An assignment or feature vector does not match the expected dimension.
class DimensionError : public Error {
  public:
    using Error::Error;
};

/// An enumeration, qubit, or memory budget would be exceeded.
class CapacityError : public Error {
  public:
    using Error::Error;
};

/// The problem has no usable coefficients for the requested operation.
class DegenerateProblemError : public Error {
  public:
    using Error::Error;
};

/// A fixed-width value register cannot represent the objective range.
class SizingError : public Error {
  public:
    using Error::Error;
};

/// A generator spec is infeasible (e.g. clique size larger than N).
class SpecError : public Error {
  public:
    using Error::Error;
};

/// A file could not be parsed; the message carries the location.
class ParseError : public Error {
  public:
    using Error::Error;
};

/// A per-solver map is missing one of the required solvers.
class CompletenessError : public Error {
  public:
    using Error::Error;
};

}  // namespace qubosel
