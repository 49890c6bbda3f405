// Copyright 2026 The relcover Authors
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

#include <stdexcept>
#include <string>

namespace relcover {

/// Input data is structurally wrong: non-finite entries, dimension
/// mismatches, non-stochastic matrices, unparseable files.
class MalformedInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input is well-formed but violates an operation's precondition
/// (parameter out of range, divisibility, normalization).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A support inclusion supp(σ) ⊂ supp(ρ) required by a finite-valued
/// quantity does not hold.
class SupportError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An iterative routine failed to reach its stated accuracy.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unknown registry key or alphabet symbol.
class LookupError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// A resource guard (enumeration size, dimension cap) was exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace relcover
