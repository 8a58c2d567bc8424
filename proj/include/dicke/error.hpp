// Copyright 2026 The dicke-vqe Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Exception hierarchy shared by every module.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace dicke {

/// Root of all library errors.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Caller supplied inconsistent or out-of-range arguments.
class InvalidArgument : public Error {
  public:
    using Error::Error;
};

/// A dimension or memory cap would be exceeded.
class ResourceError : public Error {
  public:
    using Error::Error;
};

/// Fock-space truncation is too small for the requested operation.
class TruncationError : public Error {
  public:
    using Error::Error;
};

/// Numerical failure: non-convergence, NaN, empty postselection, ...
class NumericalError : public Error {
  public:
    using Error::Error;
};

/// Malformed or unknown configuration input.
class ConfigError : public Error {
  public:
    using Error::Error;
};

} // namespace dicke
