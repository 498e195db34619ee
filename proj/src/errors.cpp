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

#include "wittgroup/errors.hpp"

namespace wittgroup {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::UnsupportedSize: return "UnsupportedSize";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::DescriptorMismatch: return "DescriptorMismatch";
    case ErrorKind::NoEmbedding: return "NoEmbedding";
    case ErrorKind::NonUnitDeterminant: return "NonUnitDeterminant";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::NotInvariant: return "NotInvariant";
    case ErrorKind::ClassificationFailure: return "ClassificationFailure";
    case ErrorKind::SizeExceeded: return "SizeExceeded";
    case ErrorKind::SectionInvalid: return "SectionInvalid";
    case ErrorKind::NotEquivariant: return "NotEquivariant";
    case ErrorKind::KernelNotAbelianP: return "KernelNotAbelianP";
    case ErrorKind::ClassesDiffer: return "ClassesDiffer";
    case ErrorKind::CocycleInvalid: return "CocycleInvalid";
    case ErrorKind::ActionMismatch: return "ActionMismatch";
    case ErrorKind::NotSurjective: return "NotSurjective";
    case ErrorKind::KernelMismatch: return "KernelMismatch";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::ResidualImageTooSmall: return "ResidualImageTooSmall";
    case ErrorKind::UnexpectedObstruction: return "UnexpectedObstruction";
    case ErrorKind::SectionNotFound: return "SectionNotFound";
    case ErrorKind::NonIntegralCoefficient: return "NonIntegralCoefficient";
    case ErrorKind::InvalidSurjection: return "InvalidSurjection";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace wittgroup
