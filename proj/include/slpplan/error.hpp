// Copyright 2026 The slpplan Authors
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

#ifndef SLPPLAN_ERROR_HPP_
#define SLPPLAN_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace slpplan {

enum class ErrorKind {
  kInvalidInput,
  kParse,
  kDuplicateWaypoint,
  kOutOfRange,
  kProjectionAmbiguous,
  kInfeasibleCorridor,
  kSingularState,
  kDimensionMismatch,
  kInitializationFailure,
  kSolverBreakdown,
  kCppInfeasible,
  kEmptyResult,
  kIo,
};

inline const char* ToString(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidInput: return "invalid input";
    case ErrorKind::kParse: return "parse error";
    case ErrorKind::kDuplicateWaypoint: return "duplicate waypoint";
    case ErrorKind::kOutOfRange: return "out of range";
    case ErrorKind::kProjectionAmbiguous: return "projection ambiguous";
    case ErrorKind::kInfeasibleCorridor: return "infeasible corridor";
    case ErrorKind::kSingularState: return "singular state";
    case ErrorKind::kDimensionMismatch: return "dimension mismatch";
    case ErrorKind::kInitializationFailure: return "initialization failure";
    case ErrorKind::kSolverBreakdown: return "solver breakdown";
    case ErrorKind::kCppInfeasible: return "clothoid plan infeasible";
    case ErrorKind::kEmptyResult: return "empty result";
    case ErrorKind::kIo: return "i/o failure";
  }
  return "unknown";
}

// All library failures are reported through this exception; `kind()` lets
// callers branch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(ToString(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace slpplan

#endif  // SLPPLAN_ERROR_HPP_
