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
 * @file st_graph.h
 * @brief Station-time projection of moving obstacles, lattice search for a
 * reference station profile, and trapezoidal corridor construction.
 *
 * Points in the ST plane are stored as Vec2 with x = t [s] and y = s [m].
 **/

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "intercept/common/error.h"
#include "intercept/geometry/obstacle.h"
#include "intercept/geometry/polyline_path.h"
#include "intercept/geometry/vec2.h"

namespace intercept::speed {

using geometry::Obstacle;
using geometry::PolylinePath;
using geometry::Vec2;

struct STObstacle {
  std::array<Vec2, 4> vertices;  // counterclockwise, (t, s)
  int source = -1;               // index into the dynamic obstacle list

  /// Strict interior test with a small tolerance.
  bool Contains(double t, double s) const;
  /// Station interval covered at time t, if any.
  std::optional<std::pair<double, double>> StationRangeAt(double t) const;
  /// True when the open segment a-b overlaps the interior.
  bool IntersectsSegment(const Vec2& a, const Vec2& b) const;
  double Area() const;
};

/// Parallelogram covering every (t, s) where the path point at station s is
/// inside the obstacle (grown by robot_width / 2) at time t_offset + t,
/// restricted to t in [0, T]. One entry per contiguous blocked station run.
std::vector<STObstacle> ProjectObstacles(const PolylinePath& path,
                                         const std::vector<Obstacle>& obstacles,
                                         double horizon, double robot_width,
                                         double t_offset = 0.0);

struct STGrid {
  double horizon = 0.0;  // T [s]
  double s_max = 0.0;    // s_m [m]
  int nt = 0;
  int ns = 0;

  double dt() const { return horizon / nt; }
  double ds() const { return s_max / ns; }

  /// nt = ceil(T / dt_target), ns = ceil(s_m / ds_target), both >= 2.
  static STGrid Make(double horizon, double s_max, double dt_target,
                     double ds_target);
  void Validate() const;
};

/// Generic layered lattice: rows j in [0, ns], columns i in [0, nt], start at
/// (0, 0), end at (nt, ns), row index non-decreasing by at most max_step per
/// column. Edge costs see the row two columns back (-1 on the first edge).
struct LatticeCosts {
  std::function<double(int i, int j)> node;
  std::function<double(int i, int j_prev2, int j_prev, int j)> edge;
};

struct LatticePath {
  std::vector<int> rows;  // one per column
  double cost = 0.0;
};

/// Exact minimum over all lattice paths. Throws Error(kNoFeasibleProfile)
/// when every path has infinite cost.
LatticePath SolveLattice(int nt, int ns, int max_step, const LatticeCosts& costs);

/// Same search with the cost callables inlined. States are (column, row,
/// row step into the node), so the acceleration term is exact.
template <typename NodeFn, typename EdgeFn>
LatticePath SolveLatticeWith(int nt, int ns, int max_step, NodeFn&& node_cost,
                             EdgeFn&& edge_cost) {
  if (nt < 1 || ns < 0 || max_step < 0) {
    throw Error(ErrorCode::kDomain, "bad lattice dimensions");
  }
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const int width = max_step + 1;
  const auto idx = [&](int i, int j, int d) {
    return (static_cast<size_t>(i) * (ns + 1) + j) * width + d;
  };
  std::vector<double> cost(static_cast<size_t>(nt + 1) * (ns + 1) * width, kInf);
  std::vector<int> back(cost.size(), -1);
  // Column 1: predecessor is the start (0, 0).
  for (int j = 0; j <= std::min(max_step, ns); ++j) {
    const double node = node_cost(1, j);
    if (!std::isfinite(node)) continue;
    cost[idx(1, j, j)] = node + edge_cost(1, -1, 0, j);
  }
  for (int i = 2; i <= nt; ++i) {
    for (int j = 0; j <= ns; ++j) {
      const double node = node_cost(i, j);
      if (!std::isfinite(node)) continue;
      for (int d = 0; d <= std::min(max_step, j); ++d) {
        const int jp = j - d;
        const double* prev = &cost[idx(i - 1, jp, 0)];
        double best = kInf;
        int arg = -1;
        for (int dp = 0; dp <= std::min(max_step, jp); ++dp) {
          if (!(prev[dp] < kInf)) continue;
          const double c = prev[dp] + edge_cost(i, jp - dp, jp, j);
          if (c < best) {
            best = c;
            arg = dp;
          }
        }
        if (arg < 0 || !std::isfinite(best)) continue;
        cost[idx(i, j, d)] = best + node;
        back[idx(i, j, d)] = arg;
      }
    }
  }
  double best = kInf;
  int arg = -1;
  for (int d = 0; d <= std::min(max_step, ns); ++d) {
    if (cost[idx(nt, ns, d)] < best) {
      best = cost[idx(nt, ns, d)];
      arg = d;
    }
  }
  if (arg < 0) {
    throw Error(ErrorCode::kNoFeasibleProfile,
                "no feasible station profile reaches the terminal node");
  }
  LatticePath path;
  path.cost = best;
  path.rows.assign(nt + 1, 0);
  int j = ns;
  int d = arg;
  for (int i = nt; i >= 1; --i) {
    path.rows[i] = j;
    const int prev_d = back[idx(i, j, d)];
    j -= d;
    d = prev_d;
  }
  return path;
}

struct DpConfig {
  double w_ref = 1.0;        // pull toward s = s_m t / T
  double w_acc = 10.0;       // squared acceleration
  double w_obs = 10.0;       // proximity penalty weight
  double obs_margin = 0.5;   // [m] proximity band around ST obstacles
  double hard_margin = 0.2;  // [m] nodes closer than this in s are blocked
  double v_max = 5.0;        // [m/s]
  double v0 = 0.0;           // initial speed [m/s]
};

struct ReferenceProfile {
  std::vector<double> stations;  // one per grid column
  double dt = 0.0;
  double total_cost = 0.0;

  double horizon() const { return dt * (stations.size() - 1); }
  /// Piecewise-linear interpolation, clamped to [0, T].
  double StationAt(double t) const;
};

/// Throws Error(kNoFeasibleProfile).
ReferenceProfile DpSearch(const STGrid& grid,
                          const std::vector<STObstacle>& obstacles,
                          const DpConfig& cfg);

/// True when the polyline (t_i, s_i) touches the interior of any obstacle.
bool ProfileHitsObstacles(const std::vector<Vec2>& ts_points,
                          const std::vector<STObstacle>& obstacles);

struct CorridorSegment {
  double t0 = 0.0;
  double t1 = 0.0;
  double q0 = 0.0;  // lower(t) = q0 + q1 (t - t0)
  double q1 = 0.0;
  double p0 = 0.0;  // upper(t) = p0 + p1 (t - t0)
  double p1 = 0.0;

  double duration() const { return t1 - t0; }
  double Lower(double t) const { return q0 + q1 * (t - t0); }
  double Upper(double t) const { return p0 + p1 * (t - t0); }
};

struct Corridor {
  std::vector<CorridorSegment> segments;
};

/// Column indices of the segment boundaries: round(j nt / m), j = 0..m.
std::vector<int> SegmentBoundaries(int nt, int segments);

/// Per segment, the lower (upper) bound is the line of least (greatest) mean
/// value that stays below (above) the profile at every grid time, above
/// (below) every obstacle on that side of the profile, and within [0, s_m] at
/// the segment ends. Throws Error(kEmptyCorridor).
Corridor BuildCorridors(const ReferenceProfile& profile,
                        const std::vector<STObstacle>& obstacles,
                        const STGrid& grid, int segments);

}  // namespace intercept::speed
