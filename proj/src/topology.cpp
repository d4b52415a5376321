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

#include "tribar/topology.hpp"

#include "tribar/error.hpp"

namespace tribar {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDegenerateAxis: return "DegenerateAxis";
    case ErrorCode::kDegenerateFit: return "DegenerateFit";
    case ErrorCode::kNonConvergence: return "NonConvergence";
    case ErrorCode::kInfeasibleLengths: return "InfeasibleLengths";
    case ErrorCode::kDegenerateObservation: return "DegenerateObservation";
    case ErrorCode::kStepTimeout: return "StepTimeout";
    case ErrorCode::kInfeasibleTargets: return "InfeasibleTargets";
    case ErrorCode::kSettleDivergence: return "SettleDivergence";
    case ErrorCode::kEmptyTable: return "EmptyTable";
    case ErrorCode::kNonProgress: return "NonProgress";
    case ErrorCode::kBarTooLow: return "BarTooLow";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIo: return "IoError";
  }
  return "Unknown";
}

char TendonLetter(int index) { return static_cast<char>('A' + index); }

}  // namespace tribar
