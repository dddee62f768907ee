// Copyright 2026 The qaoa-girth Authors
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

namespace qaoa_girth {

/// A computed quantity that must be real (or finite) was not.
///
/// Thrown when the imaginary residual of a final expectation exceeds its
/// tolerance, or when an intermediate complex power overflows. Either case
/// points at an implementation bug rather than bad input.
class NumericFailure : public std::runtime_error {
 public:
  explicit NumericFailure(const std::string& what) : std::runtime_error(what) {}
};

/// The requested brute-force simulation exceeds the qubit cap.
class SizeCapError : public std::invalid_argument {
 public:
  explicit SizeCapError(const std::string& what) : std::invalid_argument(what) {}
};

/// Statevector norm left the allowed band after a gate layer.
class NormDriftError : public NumericFailure {
 public:
  explicit NormDriftError(const std::string& what) : NumericFailure(what) {}
};

}  // namespace qaoa_girth
