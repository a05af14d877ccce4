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
 * @file hybrid_astar.h
 * @brief Hybrid A* over (x, y, theta) with forward constant-steering arcs and
 * an analytic Dubins expansion near the goal.
 *
 * Only static obstacles are considered; moving obstacles are handled when the
 * speed profile is planned.
 **/

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "intercept/geometry/kinematics.h"
#include "intercept/geometry/obstacle.h"
#include "intercept/geometry/vec2.h"

namespace intercept::planning {

using geometry::Pose;
using geometry::RobotParams;
using geometry::WorldMap;

struct GridSpec {
  double cell_size = 1.0;
  int theta_bins = 72;
  double arc_length = 2.0;
  std::vector<double> steer_set;  // [rad]
  int max_expansions = 500000;

  /// cell 1, 72 heading bins, arc 2 cells, steering {-d, -d/2, 0, d/2, d}.
  static GridSpec Default(const RobotParams& params, double cell_size = 1.0);

  double shot_radius() const { return 10.0 * arc_length; }

  void Validate(const RobotParams& params) const;
};

struct CellKey {
  int64_t ix = 0;
  int64_t iy = 0;
  int64_t itheta = 0;

  bool operator==(const CellKey&) const = default;
};

CellKey CellOf(const Pose& p, const GridSpec& grid);

/// max(Dubins length, Euclidean distance).
double Heuristic(const Pose& node, const Pose& goal, double r_min);

/// Endpoint of one motion primitive: constant steering `steer` held for
/// `arc_length` at unit speed through PropagateState.
Pose ExpandPrimitive(const Pose& from, double steer, double arc_length,
                     const RobotParams& params);

/// Cost of an edge: arc length plus 0.1 arc length when the steering index
/// changes (no penalty when `prev_steer_index` < 0).
double EdgeCost(double arc_length, int prev_steer_index, int steer_index);

/// Dubins path sampled every arc_length / 2; empty unless every sample lies
/// in the map and has positive static clearance.
std::optional<std::vector<Pose>> DubinsShot(const Pose& node, const Pose& goal,
                                            const WorldMap& map, double r_min,
                                            double arc_length);

struct PlanResult {
  std::vector<Pose> waypoints;  // start ... goal
  std::vector<int> steer_indices;  // per search edge; -1 on the Dubins tail
  size_t search_edges = 0;         // waypoints[0..search_edges] are arcs
  std::vector<CellKey> expanded_cells;
};

/// Throws Error(kStartBlocked / kGoalBlocked / kNoPath).
PlanResult PlanPath(const WorldMap& map, const Pose& start, const Pose& goal,
                    const GridSpec& grid, const RobotParams& params);

double PolylineLength(const std::vector<Pose>& waypoints);

}  // namespace intercept::planning
