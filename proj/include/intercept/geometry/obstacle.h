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
 * @file obstacle.h
 * @brief Convex polygonal obstacles translating at constant velocity, and the
 * world map that holds them.
 *
 * An obstacle at time t is the set {z : G z <= b(t)} where the rows of G are
 * the unit outward edge normals of the counterclockwise polygon and
 * b(t) = G (v0 + velocity * t) + inflation. Inflating the half-spaces yields
 * a mitred polygon, which is what PolygonAt() returns.
 **/

#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "intercept/geometry/vec2.h"

namespace intercept::geometry {

using Polygon = std::vector<Vec2>;

enum class ObstacleKind { kStatic, kDynamic };

struct HalfSpace {
  Vec2 normal;  // unit, outward
  double offset = 0.0;
};

struct Obstacle {
  ObstacleKind kind = ObstacleKind::kStatic;
  Polygon vertices_at_t0;  // convex, counterclockwise
  Vec2 velocity;           // zero for static obstacles
  double inflation = 0.0;

  /// Throws Error(kValidation) unless the polygon is convex, counterclockwise
  /// and has at least three non-collinear vertices.
  void Validate() const;

  std::vector<HalfSpace> HalfSpacesAt(double t) const;
  /// Inflated, translated polygon (counterclockwise).
  Polygon PolygonAt(double t) const;
  bool Contains(const Vec2& p, double t) const;

  /// Time interval during which the moving obstacle covers the fixed point
  /// `p`, or nullopt if it never does. Bounds may be infinite.
  std::optional<std::pair<double, double>> CoverageInterval(
      const Vec2& p) const;
};

/// Counterclockwise-reorders a convex polygon given in either orientation.
Polygon MakeCounterClockwise(Polygon poly);

double SignedArea(const Polygon& poly);

struct PolygonDistance {
  double distance = 0.0;  // negative inside
  Vec2 nearest;           // closest boundary point
};

/// Signed distance from `p` to the boundary of a convex CCW polygon.
PolygonDistance SignedDistanceToPolygon(const Polygon& poly, const Vec2& p);

bool PolygonContains(const Polygon& poly, const Vec2& p);

struct WorldMap {
  double width = 0.0;
  double height = 0.0;
  double cell = 1.0;
  std::vector<Obstacle> static_obstacles;
  std::vector<Obstacle> dynamic_obstacles;

  bool InBounds(const Vec2& p) const {
    return p.x >= 0.0 && p.y >= 0.0 && p.x <= width && p.y <= height;
  }
};

enum class ObstacleFilter { kAll, kStaticOnly, kDynamicOnly };

struct Clearance {
  double distance = 0.0;  // +inf when no obstacle was considered
  Vec2 nearest;
  bool valid = false;     // false for an empty obstacle set
};

/// Minimum signed distance from `p` to every selected obstacle boundary at
/// time t (negative inside an obstacle).
Clearance SignedClearance(const WorldMap& map, const Vec2& p, double t,
                          ObstacleFilter filter = ObstacleFilter::kAll);

bool ObstacleContains(const Obstacle& ob, const Vec2& p, double t);

}  // namespace intercept::geometry
