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
 * @file kinematics.h
 * @brief Car-like robot limits, state and the kinematic model
 *
 *   x' = v cos(theta), y' = v sin(theta), theta' = v tan(delta) / L,
 *   delta' = omega, v' = accel.
 **/

#pragma once

#include "intercept/geometry/vec2.h"

namespace intercept::geometry {

struct RobotParams {
  double wheelbase = 2.5;             // L [m]
  double max_speed = 5.0;             // [m/s]
  double max_accel = 2.0;             // [m/s^2]
  double max_steer = 0.6;             // [rad]
  double max_curvature = 0.0;         // tan(max_steer) / wheelbase [1/m]
  double lateral_accel_limit = 10.0;  // a_cm [m/s^2]

  /// Builds params with max_curvature derived from the steering limit.
  static RobotParams FromSteering(double wheelbase, double max_speed,
                                  double max_accel, double max_steer,
                                  double lateral_accel_limit);

  double MinTurningRadius() const { return 1.0 / max_curvature; }

  /// Throws Error(kValidation) naming the first offending field.
  void Validate() const;
};

struct RobotState {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;  // (-pi, pi]
  double delta = 0.0;  // steering angle
  double v = 0.0;

  Pose pose() const { return {x, y, theta}; }
};

/// Integrates the kinematic model over `dt` with explicit RK4 (sub-stepped so
/// each internal step turns at most 0.05 rad) under constant steering rate
/// `omega` and acceleration `accel`. Steering and speed are clamped to the
/// limits after every sub-step and theta is normalized.
RobotState PropagateState(const RobotState& s, double omega, double accel,
                          double dt, const RobotParams& params);

}  // namespace intercept::geometry
