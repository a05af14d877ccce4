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
 * @file dubins.h
 * @brief Forward-only shortest paths under a minimum turning radius.
 *
 * Each of the six words is solved in closed form in the frame normalized by
 * the turning radius. Equal-length words are ordered LSL < RSR < LSR < RSL <
 * RLR < LRL so the result is deterministic.
 **/

#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "intercept/geometry/vec2.h"

namespace intercept::geometry {

enum class DubinsWord { kLSL = 0, kRSR, kLSR, kRSL, kRLR, kLRL };

inline constexpr std::array<DubinsWord, 6> kAllDubinsWords = {
    DubinsWord::kLSL, DubinsWord::kRSR, DubinsWord::kLSR,
    DubinsWord::kRSL, DubinsWord::kRLR, DubinsWord::kLRL};

std::string_view DubinsWordName(DubinsWord word);

struct DubinsPath {
  Pose start;
  DubinsWord word = DubinsWord::kLSL;
  std::array<double, 3> segment_lengths{};  // [m]
  double radius = 1.0;
  double total_length = 0.0;

  /// Pose after travelling `arc` metres along the path (clamped to the path).
  Pose Sample(double arc) const;

  /// Poses at `spacing` intervals; always includes both endpoints.
  std::vector<Pose> SampleUniform(double spacing) const;
};

/// Lengths of one word, or nullopt when the word has no solution.
std::optional<DubinsPath> DubinsForWord(const Pose& start, const Pose& goal,
                                        double radius, DubinsWord word);

/// Shortest path over all six words. Throws Error(kDomain) if radius <= 0.
DubinsPath DubinsShortest(const Pose& start, const Pose& goal, double radius);

}  // namespace intercept::geometry
