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
 * @file pipeline.h
 * @brief One planning cycle: fit, goal, path search, smoothing, ST graph,
 * speed optimization.
 **/

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "intercept/common/error.h"
#include "intercept/geometry/polyline_path.h"
#include "intercept/prediction/target_predictor.h"
#include "intercept/sim/scenario.h"
#include "intercept/speed/bezier.h"

namespace intercept::sim {

using geometry::PolylinePath;

/// Station schedule the robot follows: the optimized Bezier profile, the
/// uniform baseline, or the raw DP polyline.
class StationSchedule {
 public:
  StationSchedule() = default;
  static StationSchedule FromProfile(speed::SpeedProfile profile);
  static StationSchedule FromPolyline(speed::ReferenceProfile polyline);

  double horizon() const;
  speed::ProfileSample At(double t) const;
  /// sqrt(integral(a^2) / T); the polyline uses its discrete definition.
  double EnergyMetric(double v0) const;
  double MaxAbsAcceleration(double v0) const;
  const speed::SpeedProfile* profile() const {
    return profile_ ? &*profile_ : nullptr;
  }

 private:
  std::optional<speed::SpeedProfile> profile_;
  std::optional<speed::ReferenceProfile> polyline_;
};

struct StageTimes {
  double prediction_ms = 0.0;
  double path_ms = 0.0;
  double speed_ms = 0.0;
  double total_ms = 0.0;
};

struct PlanRequest {
  Pose pose;
  double speed = 0.0;
  double accel = 0.0;
  double t_now = 0.0;
  std::vector<Observation> observations;  // the most recent L are used
};

struct InterceptionPlan {
  double t_start = 0.0;
  double horizon = 0.0;  // remaining time to T
  prediction::PolyTrajectory trajectory;
  Pose goal;
  std::vector<Pose> coarse;
  std::vector<geometry::Vec2> smoothed;
  PolylinePath path;
  std::vector<speed::STObstacle> st_obstacles;
  speed::STGrid grid;
  speed::ReferenceProfile reference;
  speed::Corridor corridor;
  StationSchedule schedule;
  double v0 = 0.0;
  double speed_cost = 0.0;
  int qp_iterations = 0;
  StageTimes times;

  // Empty on success; otherwise the stage that failed and why.
  std::string failed_stage;
  std::optional<Error> error;
  bool ok() const { return failed_stage.empty(); }
};

enum class PlanDepth { kPath, kFull };

/// Never throws for planning failures; they are reported in the result.
/// kPath stops after the smoothed path.
InterceptionPlan PlanInterception(const Scenario& scn, const PlanRequest& req,
                                  PlanDepth depth = PlanDepth::kFull);

/// The speed stage alone on a given path and ST obstacles, with the
/// corridor segment count doubled until corridors exist. Throws.
void PlanSpeed(const Scenario& scn, double v0, double a0, InterceptionPlan& plan);

/// Number of ST obstacles whose interior the schedule enters, sampled
/// every dt over [0, horizon].
int CountStHits(const StationSchedule& schedule,
                const std::vector<speed::STObstacle>& obstacles, double dt);

}  // namespace intercept::sim
