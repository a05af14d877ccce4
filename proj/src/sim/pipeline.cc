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

#include "intercept/sim/pipeline.h"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "intercept/planning/hybrid_astar.h"
#include "intercept/planning/path_smoother.h"
#include "intercept/speed/speed_optimizer.h"

namespace intercept::sim {
namespace {

using Clock = std::chrono::steady_clock;

double Millis(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration<double, std::milli>(b - a).count();
}

// Drops consecutive points closer than eps so the polyline is well formed.
std::vector<geometry::Vec2> Dedupe(const std::vector<geometry::Vec2>& pts) {
  std::vector<geometry::Vec2> out;
  for (const auto& p : pts) {
    if (out.empty() || Distance(out.back(), p) > 1e-6) out.push_back(p);
  }
  if (out.size() == 1 && pts.size() > 1) out.push_back(pts.back());
  return out;
}

}  // namespace

StationSchedule StationSchedule::FromProfile(speed::SpeedProfile profile) {
  StationSchedule s;
  s.profile_ = std::move(profile);
  return s;
}

StationSchedule StationSchedule::FromPolyline(speed::ReferenceProfile polyline) {
  StationSchedule s;
  s.polyline_ = std::move(polyline);
  return s;
}

double StationSchedule::horizon() const {
  if (profile_) return profile_->horizon();
  if (polyline_) return polyline_->horizon();
  return 0.0;
}

speed::ProfileSample StationSchedule::At(double t) const {
  if (profile_) return profile_->Evaluate(t);
  if (!polyline_) throw Error(ErrorCode::kDomain, "empty station schedule");
  const auto& st = polyline_->stations;
  const double dt = polyline_->dt;
  const double tc = std::clamp(t, 0.0, polyline_->horizon());
  const auto i = std::min<size_t>(static_cast<size_t>(tc / dt), st.size() - 2);
  return {t, polyline_->StationAt(tc), (st[i + 1] - st[i]) / dt, 0.0};
}

double StationSchedule::EnergyMetric(double v0) const {
  if (profile_) return profile_->EnergyMetric();
  if (polyline_) {
    return speed::PolylineEnergyMetric(polyline_->stations, polyline_->dt, v0);
  }
  return 0.0;
}

double StationSchedule::MaxAbsAcceleration(double v0) const {
  if (profile_) return profile_->MaxAbsAcceleration();
  double best = 0.0;
  if (polyline_) {
    const auto& st = polyline_->stations;
    double v_prev = v0;
    for (size_t k = 0; k + 1 < st.size(); ++k) {
      const double v = (st[k + 1] - st[k]) / polyline_->dt;
      best = std::max(best, std::abs(v - v_prev) / polyline_->dt);
      v_prev = v;
    }
  }
  return best;
}

void PlanSpeed(const Scenario& scn, double v0, double a0, InterceptionPlan& plan) {
  const auto& cfg = scn.speed;
  plan.grid = speed::STGrid::Make(plan.horizon, plan.path.length(), cfg.dt, cfg.ds);
  speed::DpConfig dp = cfg.dp;
  dp.v_max = scn.robot.max_speed;
  dp.v0 = v0;
  plan.v0 = v0;
  if (scn.speed_planner == SpeedPlannerMode::kUniform) {
    // The baseline ignores obstacles; the DP line is kept only for export.
    try {
      plan.reference = speed::DpSearch(plan.grid, plan.st_obstacles, dp);
    } catch (const Error&) {
      plan.reference = {};
    }
    plan.schedule = StationSchedule::FromProfile(
        speed::UniformProfile(plan.horizon, plan.path.length(), cfg.qp.order));
    return;
  }
  plan.reference = speed::DpSearch(plan.grid, plan.st_obstacles, dp);
  switch (scn.speed_planner) {
    case SpeedPlannerMode::kUniform:
    case SpeedPlannerMode::kDp:
      plan.schedule = StationSchedule::FromPolyline(plan.reference);
      return;
    case SpeedPlannerMode::kOptimized:
      break;
  }

  speed::SpeedQpConfig qp = cfg.qp;
  qp.v_max = scn.robot.max_speed;
  qp.a_min = -scn.robot.max_accel;
  qp.a_max = scn.robot.max_accel;
  qp.lateral_accel = scn.robot.lateral_accel_limit;
  const int max_m = std::min(cfg.max_segments, plan.grid.nt);
  for (int m = std::min(cfg.segments, plan.grid.nt);; m = std::min(2 * m, max_m)) {
    try {
      plan.corridor = speed::BuildCorridors(plan.reference, plan.st_obstacles,
                                            plan.grid, m);
      break;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kEmptyCorridor || m >= max_m) throw;
    }
  }
  const auto caps = speed::SegmentSpeedCaps(plan.corridor, plan.path, qp);
  const speed::InitialState init{std::clamp(v0, qp.v_min, caps.front()),
                                 std::clamp(a0, qp.a_min, qp.a_max)};
  const speed::SpeedResult r =
      speed::OptimizeSpeed(plan.corridor, plan.reference, plan.path, init, qp);
  plan.speed_cost = r.cost;
  plan.qp_iterations = r.qp.iterations;
  plan.schedule = StationSchedule::FromProfile(r.profile);
}

InterceptionPlan PlanInterception(const Scenario& scn, const PlanRequest& req,
                                  PlanDepth depth) {
  InterceptionPlan plan;
  plan.t_start = req.t_now;
  plan.horizon = scn.horizon - req.t_now;
  const WorldMap map = scn.PlanningMap();
  const auto t0 = Clock::now();
  auto stage_start = t0;
  std::string stage = "prediction";
  try {
    if (!(plan.horizon > 0.0)) {
      throw Error(ErrorCode::kDomain, "no time left before the horizon");
    }
    std::vector<Observation> window = req.observations;
    if (window.size() > static_cast<size_t>(scn.observations)) {
      window.erase(window.begin(), window.end() - scn.observations);
    }
    plan.trajectory = prediction::FitPolynomial(window, scn.degree);
    plan.goal = prediction::InterceptionGoal(plan.trajectory, scn.horizon);
    auto now = Clock::now();
    plan.times.prediction_ms = Millis(stage_start, now);
    stage_start = now;

    stage = "path";
    const planning::PlanResult coarse = planning::PlanPath(
        map, req.pose, plan.goal, scn.search.ToGrid(scn.robot), scn.robot);
    plan.coarse = coarse.waypoints;
    planning::PathPolyline poly;
    for (const Pose& p : coarse.waypoints) poly.points.push_back(p.position());
    poly.points = Dedupe(poly.points);
    if (poly.points.size() >= 3) {
      planning::SmootherConfig smoother = scn.smoother;
      smoother.kappa_max = scn.robot.max_curvature;
      plan.smoothed = planning::Smooth(poly, map, smoother).path.points;
    } else {
      plan.smoothed = poly.points;
    }
    if (plan.smoothed.size() < 2) {
      throw Error(ErrorCode::kNoPath, "robot already sits on the goal");
    }
    plan.path = PolylinePath(plan.smoothed);
    now = Clock::now();
    plan.times.path_ms = Millis(stage_start, now);
    stage_start = now;

    if (depth == PlanDepth::kPath) {
      plan.times.total_ms = Millis(t0, now);
      return plan;
    }

    stage = "speed";
    plan.st_obstacles = speed::ProjectObstacles(plan.path, map.dynamic_obstacles,
                                                plan.horizon, 0.0, req.t_now);
    PlanSpeed(scn, req.speed, req.accel, plan);
    now = Clock::now();
    plan.times.speed_ms = Millis(stage_start, now);
  } catch (const Error& e) {
    plan.failed_stage = stage;
    plan.error = e;
  }
  plan.times.total_ms = Millis(t0, Clock::now());
  return plan;
}

int CountStHits(const StationSchedule& schedule,
                const std::vector<speed::STObstacle>& obstacles, double dt) {
  const auto steps = static_cast<long>(std::ceil(schedule.horizon() / dt - 1e-9));
  int hits = 0;
  for (const auto& ob : obstacles) {
    for (long k = 0; k <= steps; ++k) {
      const double t = std::min(k * dt, schedule.horizon());
      if (ob.Contains(t, schedule.At(t).s)) {
        ++hits;
        break;
      }
    }
  }
  return hits;
}

}  // namespace intercept::sim
