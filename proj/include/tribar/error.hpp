// Copyright 2026 The tribar Authors
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

#ifndef TRIBAR_ERROR_HPP_
#define TRIBAR_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace tribar {

enum class ErrorCode {
  kDegenerateAxis,
  kDegenerateFit,
  kNonConvergence,
  kInfeasibleLengths,
  kDegenerateObservation,
  kStepTimeout,
  kInfeasibleTargets,
  kSettleDivergence,
  kEmptyTable,
  kNonProgress,
  kBarTooLow,
  kInvalidArgument,
  kIo,
};

std::string_view ErrorCodeName(ErrorCode code);

// Every domain failure in the library is reported through this type; the
// code lets callers (and the CLI exit-code mapping) branch without parsing
// messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tribar

#endif  // TRIBAR_ERROR_HPP_
