// Copyright 2026 The vlat Authors
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

namespace vlat {

/// Base of every exception thrown by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The wavefunction has (numerically) vanishing norm, so expectation values
/// are undefined.
class DegenerateStateError : public Error {
 public:
  using Error::Error;
};

/// Malformed raster, config or fit document.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Filesystem failure (unreadable/unwritable path).
class IoError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure produced a result violating its own postcondition.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Not enough spectral content to seed a fit.
class InsufficientSignal : public Error {
 public:
  using Error::Error;
};

}  // namespace vlat
