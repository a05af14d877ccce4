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

#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "intercept/common/error.h"
#include "intercept/geometry/angle.h"

namespace intercept::geometry {
namespace {

RobotParams TestParams() {
  return RobotParams::FromSteering(2.0, 10.0, 3.0, 1.2, 5.0);
}

// Explicit midpoint integration with many sub-steps; independent of the
// library's RK4 path.
RobotState MidpointOracle(RobotState s, double omega, double accel, double dt,
                          const RobotParams& p, int substeps) {
  const double h = dt / substeps;
  for (int i = 0; i < substeps; ++i) {
    const double th_m = s.theta + 0.5 * h * s.v * std::tan(s.delta) / p.wheelbase;
    const double v_m = s.v + 0.5 * h * accel;
    const double d_m = s.delta + 0.5 * h * omega;
    s.x += h * v_m * std::cos(th_m);
    s.y += h * v_m * std::sin(th_m);
    s.theta += h * v_m * std::tan(d_m) / p.wheelbase;
    s.delta += h * omega;
    s.v += h * accel;
  }
  return s;
}

TEST(PropagateStateTest, StraightMotion) {
  const RobotState s{0, 0, 0, 0, 1};
  const RobotState out = PropagateState(s, 0.0, 0.0, 1.0, TestParams());
  EXPECT_DOUBLE_EQ(out.x, 1.0);
  EXPECT_DOUBLE_EQ(out.y, 0.0);
  EXPECT_DOUBLE_EQ(out.theta, 0.0);
  EXPECT_DOUBLE_EQ(out.delta, 0.0);
  EXPECT_DOUBLE_EQ(out.v, 1.0);
}

TEST(PropagateStateTest, StationaryRobotDoesNotMove) {
  const RobotState s{3, 4, 0.7, 0.3, 0};
  const RobotState out = PropagateState(s, 0.0, 0.0, 2.0, TestParams());
  EXPECT_DOUBLE_EQ(out.x, 3.0);
  EXPECT_DOUBLE_EQ(out.y, 4.0);
  EXPECT_DOUBLE_EQ(out.theta, 0.7);
}

TEST(PropagateStateTest, QuarterCircleOfUnitRadius) {
  const RobotParams p = TestParams();
  const RobotState s{0, 0, 0, std::atan(p.wheelbase), 1};
  const double dt = kPi / 2.0;
  const RobotState out = PropagateState(s, 0.0, 0.0, dt, p);
  const RobotState oracle = MidpointOracle(s, 0.0, 0.0, dt, p, 1000);
  EXPECT_NEAR(out.x, oracle.x, 1e-4);
  EXPECT_NEAR(out.y, oracle.y, 1e-4);
  EXPECT_NEAR(out.theta, oracle.theta, 1e-4);
  EXPECT_NEAR(out.x, 1.0, 1e-4);
  EXPECT_NEAR(out.y, 1.0, 1e-4);
  EXPECT_NEAR(out.theta, kPi / 2.0, 1e-4);
}

TEST(PropagateStateTest, MatchesOracleWithSteeringRateAndAccel) {
  const RobotParams p = TestParams();
  const RobotState s{1, -2, 0.4, -0.2, 2.0};
  const RobotState out = PropagateState(s, 0.3, 0.5, 1.5, p);
  const RobotState oracle = MidpointOracle(s, 0.3, 0.5, 1.5, p, 20000);
  EXPECT_NEAR(out.x, oracle.x, 1e-6);
  EXPECT_NEAR(out.y, oracle.y, 1e-6);
  EXPECT_NEAR(out.theta, NormalizeAngle(oracle.theta), 1e-6);
  EXPECT_NEAR(out.v, oracle.v, 1e-9);
}

TEST(PropagateStateTest, ClampsSteeringAndSpeed) {
  const RobotParams p = TestParams();
  const RobotState s{0, 0, 0, 1.1, 9.5};
  const RobotState out = PropagateState(s, 1.0, 2.0, 1.0, p);
  EXPECT_DOUBLE_EQ(out.delta, p.max_steer);
  EXPECT_DOUBLE_EQ(out.v, p.max_speed);
}

TEST(PropagateStateTest, RejectsBadInput) {
  const RobotParams p = TestParams();
  EXPECT_THROW(PropagateState({}, 0.0, 0.0, 0.0, p), Error);
  EXPECT_THROW(PropagateState({}, NAN, 0.0, 0.1, p), Error);
}

TEST(PropagateStateTest, NonholonomicDisplacementFollowsHeading) {
  const RobotParams p = TestParams();
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> th(-3.0, 3.0);
  std::uniform_real_distribution<double> steer(-1.1, 1.1);
  std::uniform_real_distribution<double> speed(0.5, 9.0);
  std::uniform_real_distribution<double> dts(1e-4, 1e-2);
  for (int i = 0; i < 2000; ++i) {
    const RobotState s{0, 0, th(rng), steer(rng), speed(rng)};
    const double dt = dts(rng);
    const RobotState out = PropagateState(s, 0.1, 0.2, dt, p);
    const double moved = std::atan2(out.y - s.y, out.x - s.x);
    const double mean_heading =
        s.theta + 0.5 * NormalizeAngle(out.theta - s.theta);
    EXPECT_LE(std::abs(NormalizeAngle(moved - mean_heading)), 1e-3);
  }
}

TEST(RobotParamsTest, Validation) {
  RobotParams p = TestParams();
  EXPECT_NO_THROW(p.Validate());
  p.max_curvature *= 1.1;
  EXPECT_THROW(p.Validate(), Error);
  p = TestParams();
  p.max_speed = -1.0;
  EXPECT_THROW(p.Validate(), Error);
}

}  // namespace
}  // namespace intercept::geometry
