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
 * @file scenario_io.h
 * @brief JSON scenario files. The schema is documented in docs/scenario.md.
 *
 * Loading applies defaults, reorders clockwise polygons, rejects unknown
 * keys and validates the result. Serializing writes every field, so the
 * output of Serialize(Load(f)) is the canonical form of f.
 **/

#pragma once

#include <string>
#include <string_view>

#include "intercept/sim/scenario.h"

namespace intercept::io {

inline constexpr int kScenarioVersion = 1;

/// Throws Error(kParse) with line and column on malformed text, and
/// Error(kValidation) naming the key (e.g. "robot.max_speed") otherwise.
sim::Scenario ParseScenario(std::string_view text);
sim::Scenario LoadScenario(const std::string& path);

/// Canonical text: sorted keys, two-space indent, trailing newline.
std::string SerializeScenario(const sim::Scenario& scn);

}  // namespace intercept::io
