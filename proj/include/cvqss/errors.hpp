// Copyright 2026 The cvqss Authors
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

#ifndef CVQSS_ERRORS_HPP_
#define CVQSS_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace cvqss {

/// Argument outside an operation's domain (bad index, g outside (0, sqrt 2), ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical quantity left its valid range (e.g. a non-positive determinant).
class NumericDomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The state is valid but outside what the closed forms support
/// (currently: resources that are not X-P balanced).
class UnsupportedState : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cvqss

#endif  // CVQSS_ERRORS_HPP_
