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

#include "intercept/planning/hybrid_astar.h"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "intercept/common/error.h"
#include "intercept/geometry/angle.h"
#include "intercept/geometry/dubins.h"

namespace intercept::planning {
namespace {

using geometry::Distance;
using geometry::DubinsShortest;
using geometry::ObstacleFilter;
using geometry::RobotState;
using geometry::SignedClearance;
using geometry::Vec2;

constexpr double kSteerChangePenalty = 0.1;
constexpr double kSamePoint = 1e-9;

struct CellKeyHash {
  size_t operator()(const CellKey& k) const {
    uint64_t h = static_cast<uint64_t>(k.ix) * 0x9E3779B97F4A7C15ULL;
    h ^= static_cast<uint64_t>(k.iy) + 0x632BE59BD9B4E019ULL + (h << 6) + (h >> 2);
    h ^= static_cast<uint64_t>(k.itheta) + 0x85EBCA77C2B2AE63ULL + (h << 6) +
         (h >> 2);
    return static_cast<size_t>(h);
  }
};

struct Node {
  Pose pose;
  double g = 0.0;
  int parent = -1;
  int steer_index = -1;
};

struct OpenEntry {
  double f;
  double g;
  uint64_t seq;
  int node;
};

struct OpenOrder {
  // std::priority_queue pops the largest; invert every comparison.
  bool operator()(const OpenEntry& a, const OpenEntry& b) const {
    if (a.f != b.f) return a.f > b.f;
    if (a.g != b.g) return a.g > b.g;
    return a.seq > b.seq;
  }
};

bool PointFree(const WorldMap& map, const Vec2& p) {
  if (!map.InBounds(p)) return false;
  return SignedClearance(map, p, 0.0, ObstacleFilter::kStaticOnly).distance > 0.0;
}

RobotParams UnitSpeedParams(const RobotParams& params) {
  RobotParams p = params;
  p.max_speed = std::max(p.max_speed, 1.0);
  return p;
}

Pose Propagate(const Pose& from, double steer, double arc,
               const RobotParams& unit_params) {
  const RobotState s{from.x, from.y, from.theta, steer, 1.0};
  return geometry::PropagateState(s, 0.0, 0.0, arc, unit_params).pose();
}

// Intermediate points along the arc at spacing <= cell / 4, endpoint included.
bool ArcFree(const WorldMap& map, const Pose& from, double steer,
             const GridSpec& grid, const RobotParams& unit_params) {
  const int pieces = std::max(
      2, static_cast<int>(std::ceil(grid.arc_length / (0.25 * grid.cell_size))));
  for (int k = 1; k < pieces; ++k) {
    const Pose p =
        Propagate(from, steer, grid.arc_length * k / pieces, unit_params);
    if (!PointFree(map, p.position())) return false;
  }
  return true;
}

}  // namespace

GridSpec GridSpec::Default(const RobotParams& params, double cell_size) {
  GridSpec g;
  g.cell_size = cell_size;
  g.arc_length = 2.0 * cell_size;
  const double d = params.max_steer;
  g.steer_set = {-d, -0.5 * d, 0.0, 0.5 * d, d};
  return g;
}

void GridSpec::Validate(const RobotParams& params) const {
  if (!(cell_size > 0.0)) {
    throw Error(ErrorCode::kValidation, "grid.cell_size must be > 0");
  }
  if (theta_bins < 8) {
    throw Error(ErrorCode::kValidation, "grid.theta_bins must be >= 8");
  }
  if (!(arc_length > 0.0)) {
    throw Error(ErrorCode::kValidation, "grid.arc_length must be > 0");
  }
  if (steer_set.empty()) {
    throw Error(ErrorCode::kValidation, "grid.steer_set must not be empty");
  }
  for (double s : steer_set) {
    if (!(std::abs(s) <= params.max_steer)) {
      throw Error(ErrorCode::kValidation,
                  "grid.steer_set entry exceeds max_steer");
    }
  }
}

CellKey CellOf(const Pose& p, const GridSpec& grid) {
  const double bin = geometry::kTwoPi / grid.theta_bins;
  auto it = static_cast<int64_t>(std::floor(geometry::WrapTwoPi(p.theta) / bin));
  return {static_cast<int64_t>(std::floor(p.x / grid.cell_size)),
          static_cast<int64_t>(std::floor(p.y / grid.cell_size)),
          it % grid.theta_bins};
}

double Heuristic(const Pose& node, const Pose& goal, double r_min) {
  const double dubins = DubinsShortest(node, goal, r_min).total_length;
  return std::max(dubins, Distance(node.position(), goal.position()));
}

Pose ExpandPrimitive(const Pose& from, double steer, double arc_length,
                     const RobotParams& params) {
  return Propagate(from, steer, arc_length, UnitSpeedParams(params));
}

double EdgeCost(double arc_length, int prev_steer_index, int steer_index) {
  const bool changed = prev_steer_index >= 0 && prev_steer_index != steer_index;
  return arc_length * (1.0 + (changed ? kSteerChangePenalty : 0.0));
}

std::optional<std::vector<Pose>> DubinsShot(const Pose& node, const Pose& goal,
                                            const WorldMap& map, double r_min,
                                            double arc_length) {
  const auto path = DubinsShortest(node, goal, r_min);
  std::vector<Pose> samples = path.SampleUniform(0.5 * arc_length);
  for (const Pose& p : samples) {
    if (!PointFree(map, p.position())) return std::nullopt;
  }
  return samples;
}

PlanResult PlanPath(const WorldMap& map, const Pose& start, const Pose& goal,
                    const GridSpec& grid, const RobotParams& params) {
  params.Validate();
  grid.Validate(params);
  if (!PointFree(map, start.position())) {
    throw Error(ErrorCode::kStartBlocked, "start pose is not collision-free");
  }
  if (!PointFree(map, goal.position())) {
    throw Error(ErrorCode::kGoalBlocked, "goal pose is not collision-free");
  }
  const RobotParams unit = UnitSpeedParams(params);
  const double r_min = params.MinTurningRadius();

  std::vector<Node> nodes;
  std::priority_queue<OpenEntry, std::vector<OpenEntry>, OpenOrder> open;
  std::unordered_map<CellKey, double, CellKeyHash> best_g;
  std::unordered_set<CellKey, CellKeyHash> closed;
  uint64_t seq = 0;

  nodes.push_back({start, 0.0, -1, -1});
  best_g[CellOf(start, grid)] = 0.0;
  open.push({Heuristic(start, goal, r_min), 0.0, seq++, 0});

  PlanResult result;
  while (!open.empty()) {
    const OpenEntry top = open.top();
    open.pop();
    const Node cur = nodes[top.node];
    const CellKey cell = CellOf(cur.pose, grid);
    if (closed.contains(cell)) continue;
    closed.insert(cell);
    result.expanded_cells.push_back(cell);
    if (static_cast<int>(result.expanded_cells.size()) > grid.max_expansions) {
      throw Error(ErrorCode::kNoPath,
                  "expansion budget of " + std::to_string(grid.max_expansions) +
                      " exhausted");
    }

    if (Distance(cur.pose.position(), goal.position()) <= grid.shot_radius()) {
      const auto shot = DubinsShot(cur.pose, goal, map, r_min, grid.arc_length);
      std::vector<Pose> tail;
      bool tail_ok = shot.has_value();
      if (tail_ok) {
        tail = DubinsShortest(cur.pose, goal, r_min).SampleUniform(grid.arc_length);
        tail_ok = std::all_of(tail.begin(), tail.end(), [&](const Pose& p) {
          return PointFree(map, p.position());
        });
      }
      if (tail_ok) {
        std::vector<int> chain;
        for (int i = top.node; i >= 0; i = nodes[i].parent) chain.push_back(i);
        std::reverse(chain.begin(), chain.end());
        for (size_t i = 0; i < chain.size(); ++i) {
          result.waypoints.push_back(nodes[chain[i]].pose);
          if (i > 0) result.steer_indices.push_back(nodes[chain[i]].steer_index);
        }
        result.search_edges = chain.size() - 1;
        for (size_t i = 1; i < tail.size(); ++i) {
          if (Distance(tail[i].position(), result.waypoints.back().position()) <
              kSamePoint) {
            continue;
          }
          result.waypoints.push_back(tail[i]);
          result.steer_indices.push_back(-1);
        }
        result.waypoints.back() = goal;
        return result;
      }
    }

    for (int si = 0; si < static_cast<int>(grid.steer_set.size()); ++si) {
      const double steer = grid.steer_set[si];
      const Pose child = Propagate(cur.pose, steer, grid.arc_length, unit);
      if (!ArcFree(map, cur.pose, steer, grid, unit)) continue;
      if (!PointFree(map, child.position())) continue;
      const CellKey ck = CellOf(child, grid);
      if (closed.contains(ck)) continue;
      const double g = cur.g + EdgeCost(grid.arc_length, cur.steer_index, si);
      const auto it = best_g.find(ck);
      if (it != best_g.end() && g >= it->second) continue;
      best_g[ck] = g;
      nodes.push_back({child, g, top.node, si});
      open.push({g + Heuristic(child, goal, r_min), g, seq++,
                 static_cast<int>(nodes.size()) - 1});
    }
  }
  throw Error(ErrorCode::kNoPath, "open set exhausted before reaching the goal");
}

double PolylineLength(const std::vector<Pose>& waypoints) {
  double len = 0.0;
  for (size_t i = 1; i < waypoints.size(); ++i) {
    len += Distance(waypoints[i - 1].position(), waypoints[i].position());
  }
  return len;
}

}  // namespace intercept::planning
