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

#include "intercept/geometry/polyline_path.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "intercept/common/error.h"

namespace intercept::geometry {

PolylinePath::PolylinePath(std::vector<Vec2> points)
    : points_(std::move(points)) {
  if (points_.size() < 2) {
    throw Error(ErrorCode::kDomain, "path needs at least two points");
  }
  stations_.assign(points_.size(), 0.0);
  for (size_t i = 1; i < points_.size(); ++i) {
    const double len = Distance(points_[i], points_[i - 1]);
    if (len <= 1e-9) {
      throw Error(ErrorCode::kDegenerateSegment,
                  "path segment " + std::to_string(i - 1) + " has zero length");
    }
    stations_[i] = stations_[i - 1] + len;
  }
  curvature_.assign(points_.size(), 0.0);
  for (size_t i = 1; i + 1 < points_.size(); ++i) {
    const Vec2 a = points_[i] - points_[i - 1];
    const Vec2 b = points_[i + 1] - points_[i];
    curvature_[i] = std::abs(std::atan2(Cross(a, b), Dot(a, b))) / a.Norm();
  }
}

size_t PolylinePath::SegmentIndex(double s) const {
  const auto it = std::upper_bound(stations_.begin(), stations_.end(), s);
  const auto idx = static_cast<size_t>(std::max<std::ptrdiff_t>(
      0, std::distance(stations_.begin(), it) - 1));
  return std::min(idx, points_.size() - 2);
}

Vec2 PolylinePath::PointAt(double s) const {
  s = std::clamp(s, 0.0, length());
  const size_t i = SegmentIndex(s);
  const double u = (s - stations_[i]) / (stations_[i + 1] - stations_[i]);
  return points_[i] + (points_[i + 1] - points_[i]) * u;
}

double PolylinePath::HeadingAt(double s) const {
  const size_t i = SegmentIndex(std::clamp(s, 0.0, length()));
  const Vec2 d = points_[i + 1] - points_[i];
  return std::atan2(d.y, d.x);
}

double PolylinePath::MaxCurvature(double s0, double s1) const {
  if (s1 < s0) std::swap(s0, s1);
  const size_t lo = SegmentIndex(std::clamp(s0, 0.0, length()));
  const size_t hi = SegmentIndex(std::clamp(s1, 0.0, length())) + 1;
  double best = 0.0;
  for (size_t i = lo; i <= hi && i < curvature_.size(); ++i) {
    best = std::max(best, curvature_[i]);
  }
  return best;
}

}  // namespace intercept::geometry
