// Copyright 2026 The wittgroup Authors
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

#ifndef WITTGROUP_ERRORS_HPP_
#define WITTGROUP_ERRORS_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace wittgroup {

enum class ErrorKind {
  NotPrime,
  UnsupportedSize,
  DivisionByZero,
  DescriptorMismatch,
  NoEmbedding,
  NonUnitDeterminant,
  CapExceeded,
  NotClosed,
  NotInvariant,
  ClassificationFailure,
  SizeExceeded,
  SectionInvalid,
  NotEquivariant,
  KernelNotAbelianP,
  ClassesDiffer,
  CocycleInvalid,
  ActionMismatch,
  NotSurjective,
  KernelMismatch,
  HypothesisViolated,
  ResidualImageTooSmall,
  UnexpectedObstruction,
  SectionNotFound,
  NonIntegralCoefficient,
  InvalidSurjection,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace wittgroup

#endif  // WITTGROUP_ERRORS_HPP_
