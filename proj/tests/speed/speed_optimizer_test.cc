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

#include "intercept/speed/speed_optimizer.h"

#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "gtest/gtest.h"
#include "intercept/common/error.h"
#include "speed/bezier_oracle.h"

namespace intercept::speed {
namespace {

using testing::MonomialDerivative;
using testing::Quadrature;
using testing::ToMonomial;

PolylinePath StraightPath(double len) {
  return PolylinePath({{0.0, 0.0}, {len / 2, 0.0}, {len, 0.0}});
}

STObstacle Rect(double t0, double t1, double s0, double s1) {
  return {{Vec2{t0, s0}, Vec2{t1, s0}, Vec2{t1, s1}, Vec2{t0, s1}}, 0};
}

struct StStage {
  STGrid grid;
  ReferenceProfile reference;
  Corridor corridor;
};

StStage Prepare(const std::vector<STObstacle>& obstacles, double v0, int segments) {
  StStage out;
  out.grid = STGrid::Make(10.0, 6.0, 0.1, 0.05);
  DpConfig dp;
  dp.v0 = v0;
  out.reference = DpSearch(out.grid, obstacles, dp);
  out.corridor = BuildCorridors(out.reference, obstacles, out.grid, segments);
  return out;
}

std::vector<STObstacle> TwoBlocks() {
  return {Rect(3.0, 6.0, 1.6, 2.4), Rect(5.5, 8.0, 4.0, 4.8)};
}

std::vector<Vec2> DenseTs(const SpeedProfile& p) {
  std::vector<Vec2> pts;
  for (const auto& seg : p.segments()) {
    for (int k = 0; k <= 100; ++k) {
      const double t = seg.t_start + seg.h * k / 100.0;
      pts.push_back({t, seg.Evaluate(t).s});
    }
  }
  return pts;
}

TEST(AssembleSpeedQpTest, CostMatrixMatchesQuadrature) {
  const StStage s = Prepare({}, 0.6, 1);
  SpeedQpConfig cfg;
  cfg.w_acc = 1.0;
  cfg.w_terminal = 0.0;
  const SpeedQp qp = AssembleSpeedQp(s.corridor, s.reference, StraightPath(6),
                                     {0.6, 0.0}, cfg);
  const double h = s.corridor.segments[0].duration();
  ASSERT_EQ(qp.problem.Q.rows(), 6);
  // s'' = (1/h) sum c_i b_i''(tau), so the integral over t is
  // (1/h) c^T [int b_i'' b_k'' dtau] c and Q is twice that.
  std::vector<std::vector<double>> basis(6);
  for (int i = 0; i < 6; ++i) {
    std::vector<double> unit(6, 0.0);
    unit[i] = 1.0;
    basis[i] = ToMonomial(unit);
  }
  for (int i = 0; i < 6; ++i) {
    for (int k = 0; k < 6; ++k) {
      const double q = Quadrature([&](double x) {
        return MonomialDerivative(basis[i], 2, x) *
               MonomialDerivative(basis[k], 2, x);
      });
      EXPECT_NEAR(qp.problem.Q(i, k), 2.0 * q / h, 1e-9);
    }
  }
}

TEST(AssembleSpeedQpTest, EqualityRowsEnforceJoinContinuity) {
  const StStage s = Prepare(TwoBlocks(), 0.5, 5);
  const SpeedQpConfig cfg;
  const SpeedQp qp = AssembleSpeedQp(s.corridor, s.reference, StraightPath(6),
                                     {0.5, 0.1}, cfg);
  const auto& A = qp.problem.A_eq;
  const Eigen::VectorXd particular =
      A.completeOrthogonalDecomposition().solve(qp.problem.b_eq);
  const Eigen::MatrixXd kernel = Eigen::FullPivLU<Eigen::MatrixXd>(A).kernel();
  std::mt19937_64 rng(61);
  std::normal_distribution<double> g(0.0, 1.0);
  const int width = cfg.order + 1;
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::VectorXd z =
        Eigen::VectorXd::NullaryExpr(kernel.cols(), [&] { return g(rng); });
    const Eigen::VectorXd x = particular + kernel * z;
    std::vector<BezierSegment> segs;
    for (size_t j = 0; j < s.corridor.segments.size(); ++j) {
      segs.push_back({std::vector<double>(x.data() + j * width,
                                          x.data() + (j + 1) * width),
                      s.corridor.segments[j].duration(), s.corridor.segments[j].t0});
    }
    const SpeedProfile p(segs);
    EXPECT_LE(p.MaxJoinDiscontinuity(), 1e-10);
    const ProfileSample start = p.Evaluate(0.0);
    EXPECT_NEAR(start.s, 0.0, 1e-10);
    EXPECT_NEAR(start.v, 0.5, 1e-10);
    EXPECT_NEAR(start.a, 0.1, 1e-10);
  }
}

TEST(AssembleSpeedQpTest, InitialSpeedOutsideLimitsIsRejected) {
  const StStage s = Prepare({}, 0.6, 2);
  SpeedQpConfig cfg;
  cfg.v_max = 0.5;
  try {
    AssembleSpeedQp(s.corridor, s.reference, StraightPath(6), {0.6, 0.0}, cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kAssembly);
  }
}

TEST(SegmentSpeedCapsTest, CurvatureLowersCap) {
  const PolylinePath bent({{0, 0}, {3, 0}, {3, 3}});
  Corridor c;
  c.segments.push_back({0, 5, 0, 0, 1, 0});   // stations [0, 1]
  c.segments.push_back({5, 10, 2, 0, 4, 0});  // covers the corner at s = 3
  SpeedQpConfig cfg;
  cfg.v_max = 2.0;
  cfg.lateral_accel = 0.5;
  const auto caps = SegmentSpeedCaps(c, bent, cfg);
  const double kappa = bent.MaxCurvature(2, 4);
  ASSERT_GT(kappa, 0.0);
  EXPECT_NEAR(caps[1], std::sqrt(0.5 / kappa), 1e-12);
  EXPECT_LE(caps[0], 2.0);
}

TEST(OptimizeSpeedTest, NoObstaclesGivesUniformMotion) {
  const StStage s = Prepare({}, 0.6, 4);
  const SpeedQpConfig cfg;
  const SpeedResult r =
      OptimizeSpeed(s.corridor, s.reference, StraightPath(6), {0.6, 0.0}, cfg);
  EXPECT_LE(r.profile.MaxAbsAcceleration(), 1e-3);
  EXPECT_NEAR(r.profile.Evaluate(10.0).s, 6.0, 1e-3);
  EXPECT_LE(r.qp.eq_residual, 1e-6);
  EXPECT_LE(r.qp.iq_violation, 1e-6);
}

TEST(OptimizeSpeedTest, AvoidsBlocksAndBeatsReference) {
  const auto obstacles = TwoBlocks();
  const StStage s = Prepare(obstacles, 0.5, 6);
  const SpeedQpConfig cfg;
  const SpeedResult r =
      OptimizeSpeed(s.corridor, s.reference, StraightPath(6), {0.5, 0.0}, cfg);
  EXPECT_NO_THROW(r.profile.Validate());
  EXPECT_FALSE(ProfileHitsObstacles(DenseTs(r.profile), obstacles));
  for (size_t j = 0; j < s.corridor.segments.size(); ++j) {
    const auto& c = s.corridor.segments[j];
    const auto& seg = r.profile.segments()[j];
    for (int k = 0; k <= 100; ++k) {
      const double t = seg.t_start + seg.h * k / 100.0;
      const double st = seg.Evaluate(t).s;
      EXPECT_GE(st, c.Lower(t) - 1e-6);
      EXPECT_LE(st, c.Upper(t) + 1e-6);
    }
  }
  const double ref_cost =
      PolylineCost(s.reference.stations, s.reference.dt, 0.5, 6.0, cfg);
  EXPECT_LE(r.cost, ref_cost);
  EXPECT_NEAR(r.cost, SpeedCost(r.profile, 6.0, cfg), 1e-6 * (1.0 + r.cost));
  EXPECT_LT(r.profile.EnergyMetric(),
            PolylineEnergyMetric(s.reference.stations, s.reference.dt, 0.5));
  EXPECT_TRUE(ProfileHitsObstacles(DenseTs(UniformProfile(10.0, 6.0)), obstacles));
}

TEST(OptimizeSpeedTest, DroppingAnInequalityNeverRaisesObjective) {
  const StStage s = Prepare(TwoBlocks(), 0.5, 6);
  const SpeedQpConfig cfg;
  const SpeedQp qp = AssembleSpeedQp(s.corridor, s.reference, StraightPath(6),
                                     {0.5, 0.0}, cfg);
  const QpResult full = SolveQp(qp.problem, cfg.qp);
  ASSERT_EQ(full.status, QpStatus::kSolved);
  std::mt19937_64 rng(67);
  std::uniform_int_distribution<Eigen::Index> pick(0, qp.problem.A_iq.rows() - 1);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::Index drop = pick(rng);
    QPProblem relaxed = qp.problem;
    const Eigen::Index m = relaxed.A_iq.rows();
    relaxed.A_iq.block(drop, 0, m - drop - 1, relaxed.A_iq.cols()) =
        qp.problem.A_iq.bottomRows(m - drop - 1);
    relaxed.b_iq.segment(drop, m - drop - 1) = qp.problem.b_iq.tail(m - drop - 1);
    relaxed.A_iq.conservativeResize(m - 1, Eigen::NoChange);
    relaxed.b_iq.conservativeResize(m - 1);
    const QpResult r = SolveQp(relaxed, cfg.qp);
    ASSERT_EQ(r.status, QpStatus::kSolved);
    EXPECT_LE(r.objective, full.objective + 1e-6);
  }
}

TEST(OptimizeSpeedTest, HardTerminalPinsFinalStation) {
  const StStage s = Prepare(TwoBlocks(), 0.5, 6);
  SpeedQpConfig cfg;
  cfg.hard_terminal = true;
  const SpeedResult r =
      OptimizeSpeed(s.corridor, s.reference, StraightPath(6), {0.5, 0.0}, cfg);
  EXPECT_NEAR(r.profile.Evaluate(10.0).s, 6.0, 1e-6);
}

TEST(OptimizeSpeedTest, InfeasibleCorridorIsNamed) {
  // Moving at 2 m/s with at most 0.1 m/s^2 of braking cannot stay below 1 m.
  Corridor c;
  c.segments.push_back({0, 5, 0, 0, 1, 0});
  c.segments.push_back({5, 10, 0, 0, 6, 0});
  ReferenceProfile ref;
  ref.dt = 1.0;
  for (int i = 0; i <= 10; ++i) ref.stations.push_back(0.6 * i);
  SpeedQpConfig cfg;
  cfg.a_min = -0.1;
  try {
    OptimizeSpeed(c, ref, StraightPath(6), {2.0, 0.0}, cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInfeasible);
    EXPECT_NE(std::string(e.what()).find("segment 0"), std::string::npos)
        << e.what();
  }
}

TEST(PolylineEnergyTest, ConstantSpeedIsZero) {
  std::vector<double> s;
  for (int i = 0; i <= 10; ++i) s.push_back(0.5 * i);
  EXPECT_DOUBLE_EQ(PolylineEnergyMetric(s, 1.0, 0.5), 0.0);
  // A single kink of 0.5 m/s over dt = 1 s.
  EXPECT_NEAR(PolylineAccelerationIntegral(s, 1.0, 0.0), 0.25, 1e-15);
}

}  // namespace
}  // namespace intercept::speed
