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
 * @file cli.h
 * @brief The intercept command line: predict, plan, speed, intercept, bench
 * and plot subcommands.
 *
 * Exit codes: 0 success, 1 infeasible or unsuccessful outcome, 2 usage or
 * input error.
 **/

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace intercept::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitOutcome = 1;
inline constexpr int kExitUsage = 2;

/// args excludes the program name.
int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace intercept::cli
