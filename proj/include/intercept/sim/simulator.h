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
 * @file simulator.h
 * @brief Closed-loop interception run and its log.
 **/

#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "intercept/sim/pipeline.h"
#include "intercept/sim/scenario.h"

namespace intercept::sim {

enum class Outcome { kIntercepted, kMissed, kCollided, kInfeasible };
std::string_view ToString(Outcome outcome);

struct LogRow {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;
  double v = 0.0;
  double s = 0.0;
  double a = 0.0;
  double target_x = 0.0;
  double target_y = 0.0;
  double clearance = 0.0;  // signed, over all obstacles; +inf on an empty map
};

struct InterceptionLog {
  std::vector<LogRow> rows;  // uniform steps of log_dt from t = 0
  std::vector<Observation> observations;
  std::vector<InterceptionPlan> plans;  // one per planning cycle
  Outcome outcome = Outcome::kMissed;
  std::string failed_stage;  // set when outcome is infeasible
  std::string message;
  double miss_distance = 0.0;  // at the last logged step
  double capture_time = -1.0;

  /// Discrete sqrt(sum(a^2 dt) / T) over the logged accelerations.
  double LoggedEnergyMetric() const;
};

/// Observations of the target at -(L-1) dt ... 0.
std::vector<Observation> InitialObservations(const Scenario& scn,
                                             const TargetTrajectory& truth);

/// Observe, plan and roll the robot forward until the target is within the
/// capture radius or T is reached. The run stops at capture, so the last row
/// of an intercepted log is within the capture radius.
InterceptionLog RunInterception(const Scenario& scn);

struct Violation {
  int obstacle = 0;     // index into static then dynamic obstacles
  bool dynamic = false;
  double t_begin = 0.0;
  double t_end = 0.0;
  double max_depth = 0.0;
};

/// Re-evaluates every logged robot position against every obstacle at the
/// logged time; consecutive violating rows merge into one interval.
std::vector<Violation> CheckCollision(const InterceptionLog& log,
                                      const Scenario& scn);

void WriteLogCsv(const InterceptionLog& log, std::ostream& out);
void WriteViolationsCsv(const std::vector<Violation>& report, std::ostream& out);

struct RunSummary {
  Outcome outcome = Outcome::kMissed;
  std::string failed_stage;
  double miss_distance = 0.0;
  double capture_time = -1.0;
  int violations = 0;
  double energy_metric = 0.0;         // analytic, first plan
  double logged_energy_metric = 0.0;  // from the log
  double max_abs_accel = 0.0;
  double coarse_length = 0.0;
  double smoothed_length = 0.0;
  double smoothed_max_curvature = 0.0;
  int plans = 0;
};

RunSummary Summarize(const InterceptionLog& log, const Scenario& scn);
void WriteSummaryCsv(const RunSummary& s, std::ostream& out);

}  // namespace intercept::sim
