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
 * @file path_smoother.h
 * @brief Gradient-descent smoothing of a waypoint polyline.
 *
 * J = w_obs J_obs + w_cur J_cur + w_smo J_smo with
 *   J_obs = sum min(0, d_i - d_max)^2         (d_i: signed static clearance)
 *   J_cur = sum max(0, dphi_i / |dx_i| - k_max)^2
 *   J_smo = sum |x_{i+1} - 2 x_i + x_{i-1}|^2
 * where dx_i = x_i - x_{i-1} and dphi_i is the turn between dx_i and dx_{i+1}.
 **/

#pragma once

#include <vector>

#include "intercept/geometry/obstacle.h"
#include "intercept/geometry/vec2.h"

namespace intercept::planning {

using geometry::Vec2;
using geometry::WorldMap;

struct SmootherConfig {
  double w_obs = 0.1;
  double w_cur = 0.1;
  double w_smo = 0.2;
  double d_max = 2.0;
  double kappa_max = 0.2;
  double alpha_obs = 0.25;
  double alpha_cur = 0.25;
  double alpha_smo = 0.25;
  int max_iters = 500;
  double converge_tol = 1e-6;

  void Validate() const;
};

struct PathPolyline {
  std::vector<Vec2> points;
  std::vector<bool> fixed;  // empty means endpoints only

  bool IsFixed(size_t i) const;
};

struct ObjectiveTerms {
  double obs = 0.0;
  double cur = 0.0;
  double smo = 0.0;

  double Total(const SmootherConfig& cfg) const {
    return cfg.w_obs * obs + cfg.w_cur * cur + cfg.w_smo * smo;
  }
};

/// Throws Error(kDegenerateSegment) when two consecutive points coincide.
ObjectiveTerms ComputeObjectiveTerms(const PathPolyline& path,
                                     const WorldMap& map,
                                     const SmootherConfig& cfg);

struct TermGradients {
  std::vector<Vec2> obs;
  std::vector<Vec2> cur;
  std::vector<Vec2> smo;
};

/// Unweighted analytic gradients of each term; fixed points get zero.
TermGradients ComputeGradients(const PathPolyline& path, const WorldMap& map,
                               const SmootherConfig& cfg);

/// Largest discrete curvature dphi_i / |dx_i| over interior points.
double MaxDiscreteCurvature(const std::vector<Vec2>& points);

/// Smallest static clearance over the points and segment midpoints.
double MinPathClearance(const std::vector<Vec2>& points, const WorldMap& map);

struct SmoothTraceEntry {
  int iteration = 0;
  double obs = 0.0;
  double cur = 0.0;
  double smo = 0.0;
  double step_scale = 1.0;
};

struct SmoothResult {
  PathPolyline path;
  std::vector<SmoothTraceEntry> trace;  // one per accepted step
  int iterations = 0;
};

/// Descends x <- x - (a_obs w_obs dJ_obs + a_cur w_cur dJ_cur + a_smo w_smo
/// dJ_smo), halving every step while the total objective would rise, a point
/// would leave the map, or clearance would drop below
/// min(input clearance, d_max).
SmoothResult Smooth(const PathPolyline& path, const WorldMap& map,
                    const SmootherConfig& cfg);

}  // namespace intercept::planning
