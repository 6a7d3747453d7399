// Copyright 2026 The qabacus Authors
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

namespace qabacus {

/// Base class of every computational failure raised by the library.
/// Precondition violations are reported with std::invalid_argument instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// mu = 0: the barrier fully decouples the half-lines and lambda diverges.
class DegenerateDecoupled : public Error {
 public:
  using Error::Error;
};

/// An envelope or state has weight in the last retained basis function.
class TruncationError : public Error {
 public:
  using Error::Error;
};

/// A root or eigenvalue could not be resolved to the requested accuracy.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Accumulated leakage left the locational qubit subspace (> 0.5).
class LeakageOverflow : public Error {
 public:
  using Error::Error;
};

/// A pulse has no ideal 2x2 gate representation (generic Robin wall).
class NotQubitExact : public Error {
 public:
  using Error::Error;
};

/// Grid too coarse or too narrow for the requested potential.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

/// Singular Crank-Nicolson step matrix.
class LinearSolveError : public Error {
 public:
  using Error::Error;
};

}  // namespace qabacus
