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
 * @file polyline_path.h
 * @brief Arc-length parameterized polyline.
 **/

#pragma once

#include <vector>

#include "intercept/geometry/vec2.h"

namespace intercept::geometry {

class PolylinePath {
 public:
  PolylinePath() = default;
  /// Throws Error(kDegenerateSegment) on repeated consecutive points and
  /// Error(kDomain) on fewer than two points.
  explicit PolylinePath(std::vector<Vec2> points);

  double length() const { return stations_.empty() ? 0.0 : stations_.back(); }
  const std::vector<Vec2>& points() const { return points_; }
  const std::vector<double>& stations() const { return stations_; }

  /// Linear interpolation; s is clamped to [0, length].
  Vec2 PointAt(double s) const;
  /// Heading of the segment containing s.
  double HeadingAt(double s) const;

  /// Largest discrete curvature (turn angle over incoming segment length) at
  /// vertices with station in [s0, s1]; also counts the vertices bracketing
  /// the interval. Zero for a single segment.
  double MaxCurvature(double s0, double s1) const;

 private:
  size_t SegmentIndex(double s) const;

  std::vector<Vec2> points_;
  std::vector<double> stations_;
  std::vector<double> curvature_;  // per vertex, zero at the ends
};

}  // namespace intercept::geometry
