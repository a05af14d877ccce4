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

#include "intercept/sim/scenario.h"

#include <cmath>
#include <string>

#include "intercept/common/error.h"

namespace intercept::sim {
namespace {

void Require(bool ok, const std::string& field, const std::string& what) {
  if (!ok) throw Error(ErrorCode::kValidation, field + " " + what);
}

// Re-raises a nested validation error with the field path prefixed.
template <typename F>
void Nested(const std::string& prefix, F&& f) {
  try {
    f();
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kValidation) throw;
    throw Error(ErrorCode::kValidation, prefix + "." + e.message());
  }
}

}  // namespace

std::string_view ToString(SpeedPlannerMode mode) {
  switch (mode) {
    case SpeedPlannerMode::kOptimized: return "optimized";
    case SpeedPlannerMode::kUniform: return "uniform";
    case SpeedPlannerMode::kDp: return "dp";
  }
  return "optimized";
}

std::string_view ToString(TrackMode mode) {
  return mode == TrackMode::kPursuit ? "pursuit" : "playback";
}

SpeedPlannerMode ParseSpeedPlannerMode(std::string_view name) {
  if (name == "optimized") return SpeedPlannerMode::kOptimized;
  if (name == "uniform") return SpeedPlannerMode::kUniform;
  if (name == "dp") return SpeedPlannerMode::kDp;
  throw Error(ErrorCode::kValidation,
              "unknown speed planner '" + std::string(name) + "'");
}

TrackMode ParseTrackMode(std::string_view name) {
  if (name == "playback") return TrackMode::kPlayback;
  if (name == "pursuit") return TrackMode::kPursuit;
  throw Error(ErrorCode::kValidation,
              "unknown track mode '" + std::string(name) + "'");
}

planning::GridSpec SearchConfig::ToGrid(const RobotParams& params) const {
  planning::GridSpec g = planning::GridSpec::Default(params, cell_size);
  g.theta_bins = theta_bins;
  g.arc_length = arc_length;
  g.max_expansions = max_expansions;
  return g;
}

void Scenario::Validate() const {
  Require(map.width > 0.0 && map.height > 0.0, "map.width and map.height", "must be > 0");
  Require(map.cell > 0.0, "map.cell", "must be > 0");
  for (size_t i = 0; i < map.static_obstacles.size(); ++i) {
    Nested("static_obstacles[" + std::to_string(i) + "]",
           [&] { map.static_obstacles[i].Validate(); });
  }
  for (size_t i = 0; i < map.dynamic_obstacles.size(); ++i) {
    Nested("dynamic_obstacles[" + std::to_string(i) + "]",
           [&] { map.dynamic_obstacles[i].Validate(); });
  }
  Nested("robot", [&] { robot.Validate(); });
  Require(robot_radius >= 0.0, "robot.radius", "must be >= 0");
  Require(start_speed >= 0.0 && start_speed <= robot.max_speed, "robot.start_speed",
          "must lie in [0, max_speed]");
  Require(map.InBounds(start.position()), "robot.start", "must lie inside the map");
  const WorldMap planning_map = PlanningMap();
  Require(SignedClearance(planning_map, start.position(), 0.0).distance > 0.0,
          "robot.start", "must be collision-free at t = 0");
  Nested("target", [&] { target.Validate(); });
  Nested("noise", [&] { noise.Validate(); });
  Require(observations >= 1, "plan.observations", "must be >= 1");
  Require(degree >= 0, "plan.degree", "must be >= 0");
  Require(observations >= degree + 1, "plan.observations", "must be >= degree + 1");
  Require(horizon > 0.0 && std::isfinite(horizon), "plan.horizon", "must be > 0");
  Require(search.cell_size > 0.0, "search.cell_size", "must be > 0");
  Require(search.theta_bins >= 4, "search.theta_bins", "must be >= 4");
  Require(search.arc_length > 0.0, "search.arc_length", "must be > 0");
  Require(search.max_expansions > 0, "search.max_expansions", "must be > 0");
  Nested("smoother", [&] { smoother.Validate(); });
  Require(speed.dt > 0.0, "speed.dt", "must be > 0");
  Require(speed.ds > 0.0, "speed.ds", "must be > 0");
  Require(speed.segments >= 1, "speed.segments", "must be >= 1");
  Require(speed.max_segments >= speed.segments, "speed.max_segments",
          "must be >= speed.segments");
  Nested("speed", [&] { speed.qp.Validate(); });
  Require(capture_radius > 0.0, "plan.capture_radius", "must be > 0");
  Require(log_dt > 0.0 && log_dt <= horizon, "plan.log_dt", "must lie in (0, plan.horizon]");
  Require(replan_period > 0.0, "plan.replan_period", "must be > 0");
}

WorldMap Scenario::PlanningMap() const {
  WorldMap out = map;
  for (auto& ob : out.static_obstacles) ob.inflation += robot_radius;
  for (auto& ob : out.dynamic_obstacles) ob.inflation += robot_radius;
  return out;
}

}  // namespace intercept::sim
