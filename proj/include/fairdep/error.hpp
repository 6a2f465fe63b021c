/*
 * Copyright (c) 2026, The fairdep Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace fairdep {

/// Argument outside the mathematical domain of a function (x <= 0 for lnGamma, p not in (0,1), ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed table, distribution, partition or shape mismatch.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A dof-dependent quantity was requested for a table whose degrees of freedom are zero.
class ZeroDofError : public DomainError {
 public:
  ZeroDofError() : DomainError("degrees of freedom are zero") {}
  explicit ZeroDofError(const std::string& what) : DomainError(what) {}
};

/// The equivalent-sample-size constraint has no positive root for this table.
class NoRootError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative solver hit its iteration cap before meeting the tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fairdep
