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
 * @file speed_optimizer.h
 * @brief Piecewise Bezier speed optimization inside ST corridors.
 *
 * The decision vector stacks the scaled control points of every segment.
 * Cost is w_acc * integral(s'')^2 + w_terminal * (s(T) - s_ref(T))^2, with
 * initial state and C2 joins as equalities and corridor, speed and
 * acceleration limits on control points.
 **/

#pragma once

#include <optional>
#include <vector>

#include "intercept/geometry/polyline_path.h"
#include "intercept/speed/bezier.h"
#include "intercept/speed/qp_solver.h"
#include "intercept/speed/st_graph.h"

namespace intercept::speed {

struct SpeedQpConfig {
  int order = 5;
  double w_acc = 10.0;
  double w_terminal = 3.0;
  bool hard_terminal = false;
  std::optional<double> terminal_speed;
  std::optional<double> terminal_accel;
  double v_min = 0.0;
  double v_max = 5.0;
  double a_min = -2.0;
  double a_max = 2.0;
  double lateral_accel = 1e9;  // a_cm; large leaves the curvature cap inactive
  QpSettings qp;

  void Validate() const;
};

struct InitialState {
  double v0 = 0.0;
  double a0 = 0.0;
};

/// Per-segment speed cap min(v_max, sqrt(a_cm / kappa)) where kappa is the
/// largest path curvature over the stations the corridor segment spans.
std::vector<double> SegmentSpeedCaps(const Corridor& corridor,
                                     const PolylinePath& path,
                                     const SpeedQpConfig& cfg);

struct SpeedQp {
  QPProblem problem;
  std::vector<int> eq_segment;  // owning corridor segment of each row
  std::vector<int> iq_segment;
  double objective_constant = 0.0;  // add to the QP objective for the cost
};

/// Throws Error(kAssembly) on inconsistent inputs or an initial state
/// outside the limits.
SpeedQp AssembleSpeedQp(const Corridor& corridor,
                        const ReferenceProfile& reference,
                        const PolylinePath& path, const InitialState& init,
                        const SpeedQpConfig& cfg);

struct SpeedResult {
  SpeedProfile profile;
  QpResult qp;
  double cost = 0.0;
};

/// Throws Error(kInfeasible) naming the corridor segment carrying the
/// largest infeasibility certificate weight, or Error(kMaxIterations).
SpeedResult OptimizeSpeed(const Corridor& corridor,
                          const ReferenceProfile& reference,
                          const PolylinePath& path, const InitialState& init,
                          const SpeedQpConfig& cfg);

/// The optimized cost evaluated on any profile.
double SpeedCost(const SpeedProfile& profile, double s_ref, const SpeedQpConfig& cfg);

/// Discrete counterpart for a station polyline sampled every dt: speeds are
/// forward differences, the first acceleration is measured from v0.
double PolylineAccelerationIntegral(const std::vector<double>& stations,
                                    double dt, double v0);
double PolylineEnergyMetric(const std::vector<double>& stations, double dt,
                            double v0);
double PolylineCost(const std::vector<double>& stations, double dt, double v0,
                    double s_ref, const SpeedQpConfig& cfg);

/// Uniform-speed baseline s = s_ref t / T as a single Bezier segment.
SpeedProfile UniformProfile(double horizon, double s_ref, int order = 5);

}  // namespace intercept::speed
