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

/**
 * @file error.h
 * @brief Error codes shared by every stage of the interception pipeline.
 **/

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace intercept {

enum class ErrorCode {
  kDomain,
  kSingularFit,
  kStartBlocked,
  kGoalBlocked,
  kNoPath,
  kDegenerateSegment,
  kNoFeasibleProfile,
  kEmptyCorridor,
  kAssembly,
  kInfeasible,
  kMaxIterations,
  kParse,
  kValidation,
};

std::string_view ErrorCodeName(ErrorCode code);

/// Thrown by every module; `code()` lets callers map failures to outcomes.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code),
        message_(message) {}

  ErrorCode code() const { return code_; }
  /// The message without the code prefix.
  const std::string& message() const { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
};

}  // namespace intercept
