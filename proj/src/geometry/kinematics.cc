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

#include "intercept/geometry/kinematics.h"

#include <algorithm>
#include <array>
#include <cmath>

#include "intercept/common/error.h"
#include "intercept/geometry/angle.h"

namespace intercept::geometry {
namespace {

using Derivative = std::array<double, 5>;  // x, y, theta, delta, v

constexpr double kMaxSubstepTurn = 0.05;  // [rad]

Derivative Rates(const Derivative& s, double omega, double accel,
                 double wheelbase) {
  return {s[4] * std::cos(s[2]), s[4] * std::sin(s[2]),
          s[4] * std::tan(s[3]) / wheelbase, omega, accel};
}

Derivative Axpy(const Derivative& s, const Derivative& k, double h) {
  Derivative out;
  for (size_t i = 0; i < out.size(); ++i) {
    out[i] = s[i] + h * k[i];
  }
  return out;
}

}  // namespace

RobotParams RobotParams::FromSteering(double wheelbase, double max_speed,
                                      double max_accel, double max_steer,
                                      double lateral_accel_limit) {
  RobotParams p;
  p.wheelbase = wheelbase;
  p.max_speed = max_speed;
  p.max_accel = max_accel;
  p.max_steer = max_steer;
  p.max_curvature = std::tan(max_steer) / wheelbase;
  p.lateral_accel_limit = lateral_accel_limit;
  return p;
}

void RobotParams::Validate() const {
  auto positive = [](double v, const char* name) {
    if (!(std::isfinite(v) && v > 0.0)) {
      throw Error(ErrorCode::kValidation,
                  std::string(name) + " must be strictly positive");
    }
  };
  positive(wheelbase, "wheelbase");
  positive(max_speed, "max_speed");
  positive(max_accel, "max_accel");
  positive(max_steer, "max_steer");
  positive(max_curvature, "max_curvature");
  positive(lateral_accel_limit, "lateral_accel_limit");
  if (max_steer >= kPi / 2.0) {
    throw Error(ErrorCode::kValidation, "max_steer must be below pi/2");
  }
  const double expected = std::tan(max_steer) / wheelbase;
  if (std::abs(max_curvature - expected) > 1e-9 * std::max(1.0, expected)) {
    throw Error(ErrorCode::kValidation,
                "max_curvature must equal tan(max_steer) / wheelbase");
  }
}

RobotState PropagateState(const RobotState& s, double omega, double accel,
                          double dt, const RobotParams& params) {
  if (!(dt > 0.0) || !std::isfinite(dt) || !std::isfinite(omega) ||
      !std::isfinite(accel) || !std::isfinite(s.x) || !std::isfinite(s.y) ||
      !std::isfinite(s.theta) || !std::isfinite(s.delta) ||
      !std::isfinite(s.v)) {
    throw Error(ErrorCode::kDomain, "PropagateState: invalid input");
  }
  // RK4 sub-steps sized by the heading change they cover.
  const double v_bound = std::max(std::abs(s.v), std::abs(s.v + accel * dt));
  const double steer_bound =
      std::min(std::max(std::abs(s.delta), std::abs(s.delta + omega * dt)),
               params.max_steer);
  const double turn = v_bound * std::tan(steer_bound) / params.wheelbase * dt;
  const int substeps =
      std::clamp(static_cast<int>(std::ceil(turn / kMaxSubstepTurn)), 1, 100000);
  const double h = dt / substeps;
  const double wb = params.wheelbase;

  Derivative y{s.x, s.y, s.theta, s.delta, s.v};
  for (int step = 0; step < substeps; ++step) {
    const Derivative k1 = Rates(y, omega, accel, wb);
    const Derivative k2 = Rates(Axpy(y, k1, h / 2.0), omega, accel, wb);
    const Derivative k3 = Rates(Axpy(y, k2, h / 2.0), omega, accel, wb);
    const Derivative k4 = Rates(Axpy(y, k3, h), omega, accel, wb);
    for (size_t i = 0; i < y.size(); ++i) {
      y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    y[3] = std::clamp(y[3], -params.max_steer, params.max_steer);
    y[4] = std::clamp(y[4], -params.max_speed, params.max_speed);
  }
  const Derivative& y1 = y;
  RobotState out;
  out.x = y1[0];
  out.y = y1[1];
  out.theta = NormalizeAngle(y1[2]);
  out.delta = std::clamp(y1[3], -params.max_steer, params.max_steer);
  out.v = std::clamp(y1[4], -params.max_speed, params.max_speed);
  return out;
}

}  // namespace intercept::geometry
