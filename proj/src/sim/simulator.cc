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

#include "intercept/sim/simulator.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "intercept/geometry/angle.h"
#include "intercept/planning/hybrid_astar.h"
#include "intercept/planning/path_smoother.h"

namespace intercept::sim {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPenetrationTol = 1e-9;

std::string Num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::vector<double> LogTimes(double horizon, double dt) {
  std::vector<double> times;
  const auto steps = static_cast<long>(std::floor(horizon / dt + 1e-9));
  for (long k = 0; k <= steps; ++k) times.push_back(k * dt);
  if (horizon - steps * dt > 1e-9) times.push_back(horizon);
  return times;
}

// Pure pursuit on the planned path toward the scheduled station, with a
// feed-forward acceleration and a proportional speed correction.
struct PursuitCommand {
  double omega = 0.0;
  double accel = 0.0;
};

PursuitCommand Pursue(const geometry::RobotState& st, const InterceptionPlan& plan,
                      const speed::ProfileSample& ref, const RobotParams& params,
                      double dt) {
  const double lookahead = std::max(1.0, 0.8 * std::abs(st.v));
  const geometry::Vec2 aim = plan.path.PointAt(ref.s + lookahead);
  const geometry::Vec2 to = aim - geometry::Vec2{st.x, st.y};
  const double alpha = geometry::NormalizeAngle(std::atan2(to.y, to.x) - st.theta);
  const double ld = std::max(to.Norm(), 1e-6);
  const double delta =
      std::clamp(std::atan2(2.0 * params.wheelbase * std::sin(alpha), ld),
                 -params.max_steer, params.max_steer);
  const geometry::Vec2 ref_pt = plan.path.PointAt(ref.s);
  const double heading = plan.path.HeadingAt(ref.s);
  const double along = (ref_pt.x - st.x) * std::cos(heading) +
                       (ref_pt.y - st.y) * std::sin(heading);
  const double accel = std::clamp(ref.a + 1.5 * (ref.v - st.v) + 0.8 * along,
                                  -params.max_accel, params.max_accel);
  return {(delta - st.delta) / dt, accel};
}

}  // namespace

std::string_view ToString(Outcome outcome) {
  switch (outcome) {
    case Outcome::kIntercepted: return "intercepted";
    case Outcome::kMissed: return "missed";
    case Outcome::kCollided: return "collided";
    case Outcome::kInfeasible: return "infeasible";
  }
  return "missed";
}

double InterceptionLog::LoggedEnergyMetric() const {
  if (rows.size() < 2) return 0.0;
  double sum = 0.0;
  for (size_t k = 0; k + 1 < rows.size(); ++k) {
    sum += rows[k].a * rows[k].a * (rows[k + 1].t - rows[k].t);
  }
  const double span = rows.back().t - rows.front().t;
  return span > 0.0 ? std::sqrt(sum / span) : 0.0;
}

std::vector<Observation> InitialObservations(const Scenario& scn,
                                             const TargetTrajectory& truth) {
  std::vector<Observation> obs;
  for (int k = 0; k < scn.observations; ++k) {
    const double t = truth.t_first() + k * truth.dt();
    obs.push_back({t, Observe(truth.StateAtStep(k), scn.noise, k)});
  }
  return obs;
}

InterceptionLog RunInterception(const Scenario& scn) {
  scn.Validate();
  InterceptionLog log;
  const double dt_target = scn.target.dt;
  const TargetTrajectory truth(scn.target, -(scn.observations - 1) * dt_target);
  log.observations = InitialObservations(scn, truth);
  const WorldMap map = scn.PlanningMap();

  PlanRequest req{scn.start, scn.start_speed, 0.0, 0.0, log.observations};
  log.plans.push_back(PlanInterception(scn, req));
  if (!log.plans.back().ok()) {
    const auto& failed = log.plans.back();
    log.outcome = Outcome::kInfeasible;
    log.failed_stage = failed.failed_stage;
    log.message = failed.error ? failed.error->message() : "";
    const geometry::Vec2 target = truth.PositionAt(0.0);
    log.rows.push_back({0.0, scn.start.x, scn.start.y, scn.start.theta,
                        scn.start_speed, 0.0, 0.0, target.x, target.y,
                        SignedClearance(map, scn.start.position(), 0.0).distance});
    log.miss_distance = Distance(scn.start.position(), target);
    return log;
  }

  size_t active = 0;
  double next_replan = scn.replan ? scn.replan_period : kInf;
  int64_t next_obs_step = scn.observations;
  geometry::RobotState robot{scn.start.x, scn.start.y, scn.start.theta, 0.0,
                             scn.start_speed};
  bool collided = false;
  const std::vector<double> times = LogTimes(scn.horizon, scn.log_dt);
  for (size_t k = 0; k < times.size(); ++k) {
    const double t = times[k];
    if (t >= next_replan - 1e-9 && t < scn.horizon - 1e-9) {
      while (truth.t_first() + next_obs_step * dt_target <= t + 1e-9) {
        log.observations.push_back(
            {truth.t_first() + next_obs_step * dt_target,
             Observe(truth.StateAtStep(next_obs_step), scn.noise, next_obs_step)});
        ++next_obs_step;
      }
      const LogRow& last = log.rows.back();
      PlanRequest again{{last.x, last.y, last.theta}, last.v, last.a, t,
                        log.observations};
      InterceptionPlan p = PlanInterception(scn, again);
      if (p.ok()) {
        log.plans.push_back(std::move(p));
        active = log.plans.size() - 1;
      }
      next_replan += scn.replan_period;
    }
    const InterceptionPlan& plan = log.plans[active];
    const speed::ProfileSample ref = plan.schedule.At(t - plan.t_start);
    LogRow row;
    row.t = t;
    if (scn.track == TrackMode::kPlayback) {
      const double s = std::clamp(ref.s, 0.0, plan.path.length());
      const geometry::Vec2 p = plan.path.PointAt(s);
      row.x = p.x;
      row.y = p.y;
      row.theta = plan.path.HeadingAt(s);
      row.v = ref.v;
      row.s = ref.s;
      row.a = ref.a;
    } else {
      if (k > 0) {
        const double h = t - times[k - 1];
        const speed::ProfileSample prev = plan.schedule.At(times[k - 1] - plan.t_start);
        const PursuitCommand cmd = Pursue(robot, plan, prev, scn.robot, h);
        robot = geometry::PropagateState(robot, cmd.omega, cmd.accel, h, scn.robot);
        row.a = cmd.accel;
      } else {
        row.a = ref.a;
      }
      row.x = robot.x;
      row.y = robot.y;
      row.theta = robot.theta;
      row.v = robot.v;
      row.s = ref.s;
    }
    const geometry::Vec2 target = truth.PositionAt(t);
    row.target_x = target.x;
    row.target_y = target.y;
    row.clearance = SignedClearance(map, {row.x, row.y}, t).distance;
    log.rows.push_back(row);
    collided = collided || row.clearance < -kPenetrationTol;
    log.miss_distance = Distance({row.x, row.y}, target);
    if (log.miss_distance <= scn.capture_radius) {
      log.capture_time = t;
      break;
    }
  }
  if (collided) {
    log.outcome = Outcome::kCollided;
  } else if (log.capture_time >= 0.0) {
    log.outcome = Outcome::kIntercepted;
  } else {
    log.outcome = Outcome::kMissed;
  }
  return log;
}

std::vector<Violation> CheckCollision(const InterceptionLog& log,
                                      const Scenario& scn) {
  const WorldMap map = scn.PlanningMap();
  std::vector<const geometry::Obstacle*> obstacles;
  for (const auto& ob : map.static_obstacles) obstacles.push_back(&ob);
  for (const auto& ob : map.dynamic_obstacles) obstacles.push_back(&ob);
  const int n_static = static_cast<int>(map.static_obstacles.size());
  std::vector<Violation> report;
  for (size_t i = 0; i < obstacles.size(); ++i) {
    bool open = false;
    Violation cur;
    for (const LogRow& row : log.rows) {
      const double d = geometry::SignedDistanceToPolygon(
                           obstacles[i]->PolygonAt(row.t), {row.x, row.y})
                           .distance;
      if (d < -kPenetrationTol) {
        if (!open) {
          cur = {static_cast<int>(i) < n_static ? static_cast<int>(i)
                                                : static_cast<int>(i) - n_static,
                 static_cast<int>(i) >= n_static, row.t, row.t, 0.0};
          open = true;
        }
        cur.t_end = row.t;
        cur.max_depth = std::max(cur.max_depth, -d);
      } else if (open) {
        report.push_back(cur);
        open = false;
      }
    }
    if (open) report.push_back(cur);
  }
  std::sort(report.begin(), report.end(), [](const Violation& a, const Violation& b) {
    return a.t_begin < b.t_begin ||
           (a.t_begin == b.t_begin && (a.dynamic < b.dynamic ||
                                       (a.dynamic == b.dynamic && a.obstacle < b.obstacle)));
  });
  return report;
}

void WriteLogCsv(const InterceptionLog& log, std::ostream& out) {
  out << "t,x,y,theta,v,s,a,target_x,target_y,clearance\n";
  for (const LogRow& r : log.rows) {
    out << Num(r.t) << ',' << Num(r.x) << ',' << Num(r.y) << ',' << Num(r.theta)
        << ',' << Num(r.v) << ',' << Num(r.s) << ',' << Num(r.a) << ','
        << Num(r.target_x) << ',' << Num(r.target_y) << ',' << Num(r.clearance)
        << '\n';
  }
}

void WriteViolationsCsv(const std::vector<Violation>& report, std::ostream& out) {
  out << "kind,obstacle,t_begin,t_end,max_depth\n";
  for (const Violation& v : report) {
    out << (v.dynamic ? "dynamic" : "static") << ',' << v.obstacle << ','
        << Num(v.t_begin) << ',' << Num(v.t_end) << ',' << Num(v.max_depth) << '\n';
  }
}

RunSummary Summarize(const InterceptionLog& log, const Scenario& scn) {
  RunSummary s;
  s.outcome = log.outcome;
  s.failed_stage = log.failed_stage;
  s.miss_distance = log.miss_distance;
  s.capture_time = log.capture_time;
  s.violations = static_cast<int>(CheckCollision(log, scn).size());
  s.logged_energy_metric = log.LoggedEnergyMetric();
  s.plans = static_cast<int>(log.plans.size());
  if (!log.plans.empty() && log.plans.front().ok()) {
    const InterceptionPlan& p = log.plans.front();
    s.energy_metric = p.schedule.EnergyMetric(p.v0);
    s.max_abs_accel = p.schedule.MaxAbsAcceleration(p.v0);
    s.coarse_length = planning::PolylineLength(p.coarse);
    s.smoothed_length = p.path.length();
    s.smoothed_max_curvature =
        p.smoothed.size() >= 3 ? planning::MaxDiscreteCurvature(p.smoothed) : 0.0;
  }
  return s;
}

void WriteSummaryCsv(const RunSummary& s, std::ostream& out) {
  out << "outcome,failed_stage,miss_distance,capture_time,violations,"
         "energy_metric,logged_energy_metric,max_abs_accel,coarse_length,"
         "smoothed_length,smoothed_max_curvature,plans\n";
  out << ToString(s.outcome) << ',' << s.failed_stage << ',' << Num(s.miss_distance)
      << ',' << Num(s.capture_time) << ',' << s.violations << ','
      << Num(s.energy_metric) << ',' << Num(s.logged_energy_metric) << ','
      << Num(s.max_abs_accel) << ',' << Num(s.coarse_length) << ','
      << Num(s.smoothed_length) << ',' << Num(s.smoothed_max_curvature) << ','
      << s.plans << '\n';
}

}  // namespace intercept::sim
