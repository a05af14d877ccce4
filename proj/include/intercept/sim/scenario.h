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
 * @file scenario.h
 * @brief Everything one interception run needs.
 *
 * Time 0 is the planning instant. Observations arrive every target dt at
 * -(L-1) dt ... 0, and the robot must meet the target at time T.
 **/

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "intercept/geometry/kinematics.h"
#include "intercept/geometry/obstacle.h"
#include "intercept/planning/hybrid_astar.h"
#include "intercept/planning/path_smoother.h"
#include "intercept/sim/target.h"
#include "intercept/speed/speed_optimizer.h"
#include "intercept/speed/st_graph.h"

namespace intercept::sim {

using geometry::Pose;
using geometry::RobotParams;
using geometry::WorldMap;

enum class SpeedPlannerMode { kOptimized, kUniform, kDp };
enum class TrackMode { kPlayback, kPursuit };

std::string_view ToString(SpeedPlannerMode mode);
std::string_view ToString(TrackMode mode);
/// Throw Error(kValidation) on unknown names.
SpeedPlannerMode ParseSpeedPlannerMode(std::string_view name);
TrackMode ParseTrackMode(std::string_view name);

struct SearchConfig {
  double cell_size = 1.0;
  int theta_bins = 72;
  double arc_length = 2.0;
  int max_expansions = 500000;

  planning::GridSpec ToGrid(const RobotParams& params) const;
};

struct SpeedStageConfig {
  double dt = 0.1;        // ST grid time step target [s]
  double ds = 0.1;        // ST grid station step target [m]
  int segments = 5;       // corridor segments; doubled on an empty corridor
  int max_segments = 40;
  speed::DpConfig dp;     // v_max and v0 are filled in from the robot
  speed::SpeedQpConfig qp;  // limits are filled in from the robot
};

struct Scenario {
  std::string name = "scenario";
  WorldMap map;
  Pose start;
  double start_speed = 0.0;
  RobotParams robot;
  double robot_radius = 0.0;  // added to every obstacle's inflation

  TargetModel target;
  NoiseModel noise;
  int observations = 15;   // L
  int degree = 2;
  double horizon = 10.0;   // T

  SearchConfig search;
  planning::SmootherConfig smoother;  // kappa_max is taken from the robot
  SpeedStageConfig speed;

  double capture_radius = 0.3;
  double log_dt = 0.01;
  bool replan = false;
  double replan_period = 2.0;
  TrackMode track = TrackMode::kPlayback;
  SpeedPlannerMode speed_planner = SpeedPlannerMode::kOptimized;
  uint64_t seed = 0;

  /// Throws Error(kValidation) naming the offending field.
  void Validate() const;
  /// The map with robot_radius added to every obstacle's inflation.
  WorldMap PlanningMap() const;
};

}  // namespace intercept::sim
