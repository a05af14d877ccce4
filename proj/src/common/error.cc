/******************************************************************************
 * Copyright 2026 The Intercept Authors. All Rights Reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *****************************************************************************/

#include "intercept/common/error.h"

namespace intercept {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDomain:
      return "DomainError";
    case ErrorCode::kSingularFit:
      return "SingularFit";
    case ErrorCode::kStartBlocked:
      return "StartBlocked";
    case ErrorCode::kGoalBlocked:
      return "GoalBlocked";
    case ErrorCode::kNoPath:
      return "NoPath";
    case ErrorCode::kDegenerateSegment:
      return "DegenerateSegment";
    case ErrorCode::kNoFeasibleProfile:
      return "NoFeasibleProfile";
    case ErrorCode::kEmptyCorridor:
      return "EmptyCorridor";
    case ErrorCode::kAssembly:
      return "AssemblyError";
    case ErrorCode::kInfeasible:
      return "Infeasible";
    case ErrorCode::kMaxIterations:
      return "MaxIterations";
    case ErrorCode::kParse:
      return "ParseError";
    case ErrorCode::kValidation:
      return "ValidationError";
  }
  return "Unknown";
}

}  // namespace intercept
