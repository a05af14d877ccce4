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

#include "intercept/speed/st_graph.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "intercept/common/error.h"

namespace intercept::speed {
namespace {

using geometry::Cross;
using geometry::Dot;

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = 1e-9;

// Andrew's monotone chain; drops collinear points.
std::vector<Vec2> ConvexHull(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Vec2> hull(2 * pts.size());
  size_t k = 0;
  const auto turn = [](const Vec2& o, const Vec2& a, const Vec2& b) {
    return Cross(a - o, b - o);
  };
  for (const Vec2& p : pts) {
    while (k >= 2 && turn(hull[k - 2], hull[k - 1], p) <= 1e-12) --k;
    hull[k++] = p;
  }
  for (size_t i = pts.size() - 1, lo = k + 1; i-- > 0;) {
    while (k >= lo && turn(hull[k - 2], hull[k - 1], pts[i]) <= 1e-12) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

double PolygonArea(const std::vector<Vec2>& poly) {
  double a = 0.0;
  for (size_t i = 0; i < poly.size(); ++i) {
    a += Cross(poly[i], poly[(i + 1) % poly.size()]);
  }
  return 0.5 * a;
}

// Smallest-area parallelogram with sides parallel to hull edges or the
// axes that encloses `hull` and keeps t within [0, T].
std::array<Vec2, 4> EnclosingParallelogram(const std::vector<Vec2>& hull,
                                           double horizon) {
  std::vector<Vec2> dirs = {{1, 0}, {0, 1}};
  for (size_t i = 0; i < hull.size(); ++i) {
    Vec2 d = hull[(i + 1) % hull.size()] - hull[i];
    const double n = d.Norm();
    if (n < kEps) continue;
    d = d / n;
    const bool dup = std::any_of(dirs.begin(), dirs.end(), [&](const Vec2& e) {
      return std::abs(Cross(d, e)) < 1e-12;
    });
    if (!dup) dirs.push_back(d);
  }
  double best_area = kInf;
  std::array<Vec2, 4> best{};
  for (size_t i = 0; i < dirs.size(); ++i) {
    for (size_t j = i + 1; j < dirs.size(); ++j) {
      const Vec2 n1{-dirs[i].y, dirs[i].x};
      const Vec2 n2{-dirs[j].y, dirs[j].x};
      const double det = Cross(n1, n2);
      if (std::abs(det) < 1e-9) continue;
      double lo1 = kInf, hi1 = -kInf, lo2 = kInf, hi2 = -kInf;
      for (const Vec2& p : hull) {
        lo1 = std::min(lo1, Dot(n1, p));
        hi1 = std::max(hi1, Dot(n1, p));
        lo2 = std::min(lo2, Dot(n2, p));
        hi2 = std::max(hi2, Dot(n2, p));
      }
      const double area = (hi1 - lo1) * (hi2 - lo2) / std::abs(det);
      if (area >= best_area) continue;
      // Solve n1 . x = c1, n2 . x = c2.
      const auto corner = [&](double c1, double c2) {
        return Vec2{(c1 * n2.y - c2 * n1.y) / det, (n1.x * c2 - n2.x * c1) / det};
      };
      const std::array<Vec2, 4> v = {corner(lo1, lo2), corner(hi1, lo2),
                                     corner(hi1, hi2), corner(lo1, hi2)};
      const bool inside = std::all_of(v.begin(), v.end(), [&](const Vec2& p) {
        return p.x >= -1e-9 && p.x <= horizon + 1e-9;
      });
      if (!inside) continue;
      best_area = area;
      best = v;
    }
  }
  for (Vec2& p : best) p.x = std::clamp(p.x, 0.0, horizon);
  const std::vector<Vec2> ring(best.begin(), best.end());
  if (PolygonArea(ring) < 0.0) std::swap(best[1], best[3]);
  return best;
}

// Sutherland-Hodgman against t >= t0 and t <= t1.
std::vector<Vec2> ClipToWindow(const std::vector<Vec2>& poly, double t0,
                               double t1) {
  const auto clip = [](const std::vector<Vec2>& in, double bound, bool keep_above) {
    std::vector<Vec2> out;
    const auto inside = [&](const Vec2& p) {
      return keep_above ? p.x >= bound : p.x <= bound;
    };
    for (size_t i = 0; i < in.size(); ++i) {
      const Vec2& a = in[i];
      const Vec2& b = in[(i + 1) % in.size()];
      const bool ia = inside(a);
      const bool ib = inside(b);
      if (ia) out.push_back(a);
      if (ia != ib) {
        const double u = (bound - a.x) / (b.x - a.x);
        out.push_back({bound, a.y + u * (b.y - a.y)});
      }
    }
    return out;
  };
  std::vector<Vec2> out = clip(poly, t0, true);
  if (out.empty()) return out;
  return clip(out, t1, false);
}

struct LineConstraint {
  double x;      // t - t0
  double value;  // bound on a + b x
  bool upper;    // true: a + b x <= value
};

// Minimizes a + b * x_obj over the constraints; nullopt when infeasible.
std::optional<std::pair<double, double>> SolveLineLp(
    const std::vector<LineConstraint>& cons, double x_obj, bool minimize) {
  std::optional<std::pair<double, double>> best;
  double best_obj = kInf;
  for (size_t i = 0; i < cons.size(); ++i) {
    for (size_t j = i + 1; j < cons.size(); ++j) {
      const double dx = cons[j].x - cons[i].x;
      if (std::abs(dx) < 1e-12) continue;
      const double b = (cons[j].value - cons[i].value) / dx;
      const double a = cons[i].value - b * cons[i].x;
      const bool ok = std::all_of(cons.begin(), cons.end(), [&](const auto& c) {
        const double v = a + b * c.x;
        return c.upper ? v <= c.value + 1e-9 : v >= c.value - 1e-9;
      });
      if (!ok) continue;
      const double obj = (minimize ? 1.0 : -1.0) * (a + b * x_obj);
      if (obj < best_obj - 1e-12) {
        best_obj = obj;
        best = std::make_pair(a, b);
      }
    }
  }
  return best;
}

}  // namespace

bool STObstacle::Contains(double t, double s) const {
  const Vec2 p{t, s};
  for (size_t i = 0; i < 4; ++i) {
    const Vec2 e = vertices[(i + 1) % 4] - vertices[i];
    if (Cross(e, p - vertices[i]) <= kEps * e.Norm()) return false;
  }
  return true;
}

std::optional<std::pair<double, double>> STObstacle::StationRangeAt(
    double t) const {
  double lo = kInf;
  double hi = -kInf;
  for (size_t i = 0; i < 4; ++i) {
    const Vec2& a = vertices[i];
    const Vec2& b = vertices[(i + 1) % 4];
    if (t < std::min(a.x, b.x) || t > std::max(a.x, b.x)) continue;
    if (a.x == b.x) {
      lo = std::min({lo, a.y, b.y});
      hi = std::max({hi, a.y, b.y});
    } else {
      const double s = a.y + (b.y - a.y) * (t - a.x) / (b.x - a.x);
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
  }
  if (lo > hi) return std::nullopt;
  return std::make_pair(lo, hi);
}

bool STObstacle::IntersectsSegment(const Vec2& a, const Vec2& b) const {
  std::vector<Vec2> axes;
  for (size_t i = 0; i < 4; ++i) {
    const Vec2 e = vertices[(i + 1) % 4] - vertices[i];
    axes.push_back({-e.y, e.x});
  }
  const Vec2 d = b - a;
  if (d.Norm() > 0.0) axes.push_back({-d.y, d.x});
  for (Vec2 n : axes) {
    const double len = n.Norm();
    if (len < 1e-15) continue;
    n = n / len;
    double pmin = kInf, pmax = -kInf;
    for (const Vec2& v : vertices) {
      pmin = std::min(pmin, Dot(n, v));
      pmax = std::max(pmax, Dot(n, v));
    }
    const double sa = Dot(n, a);
    const double sb = Dot(n, b);
    if (std::max(sa, sb) <= pmin + kEps || std::min(sa, sb) >= pmax - kEps) {
      return false;
    }
  }
  return true;
}

double STObstacle::Area() const {
  return PolygonArea({vertices.begin(), vertices.end()});
}

std::vector<STObstacle> ProjectObstacles(const PolylinePath& path,
                                         const std::vector<Obstacle>& obstacles,
                                         double horizon, double robot_width,
                                         double t_offset) {
  std::vector<STObstacle> out;
  const double len = path.length();
  if (len <= 0.0 || horizon <= 0.0) return out;
  const int n = std::max(2000, static_cast<int>(std::ceil(len / 0.02)));
  const double ds = len / n;
  for (size_t k = 0; k < obstacles.size(); ++k) {
    Obstacle grown = obstacles[k];
    grown.inflation += 0.5 * robot_width;
    std::vector<std::optional<std::pair<double, double>>> cover(n + 1);
    for (int i = 0; i <= n; ++i) {
      const auto iv = grown.CoverageInterval(path.PointAt(i * ds));
      if (!iv) continue;
      const double lo = std::max(iv->first - t_offset, 0.0);
      const double hi = std::min(iv->second - t_offset, horizon);
      if (hi > lo) cover[i] = std::make_pair(lo, hi);
    }
    for (int i = 0; i <= n;) {
      if (!cover[i]) {
        ++i;
        continue;
      }
      int j = i;
      while (j + 1 <= n && cover[j + 1]) ++j;
      std::vector<Vec2> pts;
      for (int m = i; m <= j; ++m) {
        pts.push_back({cover[m]->first, m * ds});
        pts.push_back({cover[m]->second, m * ds});
      }
      // The true boundary lies between samples; extend one sample beyond each
      // end of the run by linear extrapolation of the occupancy interval.
      const auto extend = [&](int edge, int inner, double s) {
        double lo = cover[edge]->first;
        double hi = cover[edge]->second;
        if (inner != edge) {
          lo += lo - cover[inner]->first;
          hi += hi - cover[inner]->second;
        }
        lo = std::clamp(lo, 0.0, horizon);
        hi = std::clamp(hi, 0.0, horizon);
        if (hi < lo) lo = hi = 0.5 * (lo + hi);
        pts.push_back({lo, s});
        pts.push_back({hi, s});
      };
      if (i > 0) extend(i, std::min(i + 1, j), (i - 1) * ds);
      if (j < n) extend(j, std::max(j - 1, i), (j + 1) * ds);
      const std::vector<Vec2> hull = ConvexHull(pts);
      if (hull.size() >= 3) {
        out.push_back({EnclosingParallelogram(hull, horizon), static_cast<int>(k)});
      }
      i = j + 1;
    }
  }
  return out;
}

STGrid STGrid::Make(double horizon, double s_max, double dt_target,
                    double ds_target) {
  STGrid g;
  g.horizon = horizon;
  g.s_max = s_max;
  g.nt = std::max(2, static_cast<int>(std::ceil(horizon / dt_target - 1e-9)));
  g.ns = std::max(2, static_cast<int>(std::ceil(s_max / ds_target - 1e-9)));
  g.Validate();
  return g;
}

void STGrid::Validate() const {
  if (!(horizon > 0.0) || !(s_max > 0.0)) {
    throw Error(ErrorCode::kValidation, "ST grid needs T > 0 and s_m > 0");
  }
  if (nt < 2 || ns < 2) {
    throw Error(ErrorCode::kValidation, "ST grid needs nt, ns >= 2");
  }
}

LatticePath SolveLattice(int nt, int ns, int max_step, const LatticeCosts& costs) {
  return SolveLatticeWith(nt, ns, max_step, costs.node, costs.edge);
}

double ReferenceProfile::StationAt(double t) const {
  if (stations.empty()) return 0.0;
  const double u = std::clamp(t / dt, 0.0, static_cast<double>(stations.size() - 1));
  const auto i = std::min(static_cast<size_t>(u), stations.size() - 2);
  const double f = u - static_cast<double>(i);
  return stations[i] + f * (stations[i + 1] - stations[i]);
}

ReferenceProfile DpSearch(const STGrid& grid,
                          const std::vector<STObstacle>& obstacles,
                          const DpConfig& cfg) {
  grid.Validate();
  const double dt = grid.dt();
  const double ds = grid.ds();
  const int max_step = static_cast<int>(std::floor(cfg.v_max * dt / ds + 1e-9));
  for (const auto& ob : obstacles) {
    if (ob.Contains(0.0, 0.0) || ob.Contains(grid.horizon, grid.s_max)) {
      throw Error(ErrorCode::kNoFeasibleProfile,
                  "start or terminal ST node lies inside an obstacle");
    }
  }

  std::vector<double> node_cost(static_cast<size_t>(grid.nt + 1) * (grid.ns + 1));
  for (int i = 0; i <= grid.nt; ++i) {
    const double t = i * dt;
    std::vector<std::pair<double, double>> ranges;
    for (const auto& ob : obstacles) {
      if (auto r = ob.StationRangeAt(t)) ranges.push_back(*r);
    }
    for (int j = 0; j <= grid.ns; ++j) {
      const double s = j * ds;
      const double lag = s - grid.s_max * t / grid.horizon;
      double c = cfg.w_ref * lag * lag;
      for (const auto& ob : obstacles) {
        if (ob.Contains(t, s)) c = kInf;
      }
      for (const auto& [lo, hi] : ranges) {
        const double dist = s < lo ? lo - s : (s > hi ? s - hi : 0.0);
        if (dist < cfg.hard_margin) c = kInf;
        if (dist < cfg.obs_margin) {
          c += cfg.w_obs * (cfg.obs_margin - dist) * (cfg.obs_margin - dist);
        }
      }
      node_cost[static_cast<size_t>(i) * (grid.ns + 1) + j] = c;
    }
  }

  const auto node = [&](int i, int j) {
    return node_cost[static_cast<size_t>(i) * (grid.ns + 1) + j];
  };
  // Obstacle crossing depends only on the edge, not on j_prev2; memoize it
  // and skip the exact test outside each obstacle's bounding box.
  std::vector<std::array<double, 4>> boxes;  // t_lo, t_hi, s_lo, s_hi
  for (const auto& ob : obstacles) {
    std::array<double, 4> box{kInf, -kInf, kInf, -kInf};
    for (const Vec2& v : ob.vertices) {
      box[0] = std::min(box[0], v.x);
      box[1] = std::max(box[1], v.x);
      box[2] = std::min(box[2], v.y);
      box[3] = std::max(box[3], v.y);
    }
    boxes.push_back(box);
  }
  const int width = max_step + 1;
  std::vector<int8_t> blocked(
      static_cast<size_t>(grid.nt + 1) * (grid.ns + 1) * width, -1);
  const auto edge_blocked = [&](int i, int jp, int j) {
    int8_t& hit =
        blocked[(static_cast<size_t>(i) * (grid.ns + 1) + j) * width + (j - jp)];
    if (hit < 0) {
      const Vec2 a{(i - 1) * dt, jp * ds};
      const Vec2 b{i * dt, j * ds};
      hit = 0;
      for (size_t k = 0; k < obstacles.size() && !hit; ++k) {
        const auto& box = boxes[k];
        if (b.x < box[0] || a.x > box[1] || b.y < box[2] || a.y > box[3]) continue;
        hit = obstacles[k].IntersectsSegment(a, b) ? 1 : 0;
      }
    }
    return hit != 0;
  };
  // Squared acceleration by (row step, previous row step).
  const double acc_unit = ds / (dt * dt);
  std::vector<double> acc_cost(static_cast<size_t>(width) * width);
  for (int d = 0; d < width; ++d) {
    for (int e = 0; e < width; ++e) {
      const double a = (d - e) * acc_unit;
      acc_cost[static_cast<size_t>(d) * width + e] = cfg.w_acc * a * a;
    }
  }
  const auto edge = [&](int i, int jpp, int jp, int j) {
    if (edge_blocked(i, jp, j)) return kInf;
    if (jpp < 0) {
      const double a = ((j - jp) * ds / dt - cfg.v0) / dt;
      return cfg.w_acc * a * a;
    }
    return acc_cost[static_cast<size_t>(j - jp) * width + (jp - jpp)];
  };
  const LatticePath lp = SolveLatticeWith(grid.nt, grid.ns, max_step, node, edge);
  ReferenceProfile profile;
  profile.dt = dt;
  profile.total_cost = lp.cost;
  for (int r : lp.rows) profile.stations.push_back(r * ds);
  return profile;
}

bool ProfileHitsObstacles(const std::vector<Vec2>& ts_points,
                          const std::vector<STObstacle>& obstacles) {
  for (const auto& ob : obstacles) {
    for (size_t i = 0; i < ts_points.size(); ++i) {
      if (ob.Contains(ts_points[i].x, ts_points[i].y)) return true;
      if (i > 0 && ob.IntersectsSegment(ts_points[i - 1], ts_points[i])) {
        return true;
      }
    }
  }
  return false;
}

std::vector<int> SegmentBoundaries(int nt, int segments) {
  if (segments < 1 || segments > nt) {
    throw Error(ErrorCode::kDomain, "segment count must be in [1, nt]");
  }
  std::vector<int> b;
  for (int j = 0; j <= segments; ++j) {
    b.push_back(static_cast<int>(std::lround(static_cast<double>(j) * nt / segments)));
  }
  return b;
}

namespace {

constexpr double kProfileGaps[] = {0.1, 0.03, 0.01, 0.0};

}  // namespace

Corridor BuildCorridors(const ReferenceProfile& profile,
                        const std::vector<STObstacle>& obstacles,
                        const STGrid& grid, int segments) {
  const int nt = static_cast<int>(profile.stations.size()) - 1;
  const std::vector<int> bounds = SegmentBoundaries(nt, segments);
  const double dt = profile.dt;
  const double s_max = grid.s_max;
  Corridor corridor;
  for (int seg = 0; seg < segments; ++seg) {
    const int i0 = bounds[seg];
    const int i1 = bounds[seg + 1];
    const double t0 = i0 * dt;
    const double t1 = i1 * dt;
    std::vector<LineConstraint> lower;
    std::vector<LineConstraint> upper;
    for (double x : {0.0, t1 - t0}) {
      lower.push_back({x, 0.0, false});
      lower.push_back({x, s_max, true});
      upper.push_back({x, 0.0, false});
      upper.push_back({x, s_max, true});
    }
    for (const auto& ob : obstacles) {
      const std::vector<Vec2> clipped =
          ClipToWindow({ob.vertices.begin(), ob.vertices.end()}, t0, t1);
      if (clipped.size() < 3) continue;
      double tmin = kInf, tmax = -kInf;
      Vec2 centroid;
      for (const Vec2& p : clipped) {
        tmin = std::min(tmin, p.x);
        tmax = std::max(tmax, p.x);
        centroid += p;
      }
      if (tmax - tmin < 1e-12) continue;
      centroid = centroid / static_cast<double>(clipped.size());
      const bool below = centroid.y < profile.StationAt(centroid.x);
      for (const Vec2& p : clipped) {
        if (below) {
          lower.push_back({p.x - t0, p.y, false});
        } else {
          upper.push_back({p.x - t0, p.y, true});
        }
      }
    }
    // Keep the bounds off the profile when room allows, so the band does not
    // pinch to a point where the profile meets an outer limit.
    const auto solve = [&](std::vector<LineConstraint> rows, bool is_lower) {
      const size_t fixed = rows.size();
      for (double gap : kProfileGaps) {
        rows.resize(fixed);
        for (int i = i0; i <= i1; ++i) {
          const double s = profile.stations[i] + (is_lower ? -gap : gap);
          rows.push_back({(i - i0) * dt, s, is_lower});
        }
        if (auto line = SolveLineLp(rows, 0.5 * (t1 - t0), is_lower)) return line;
      }
      return std::optional<std::pair<double, double>>();
    };
    const auto lo = solve(lower, true);
    const auto hi = solve(upper, false);
    if (!lo || !hi) {
      throw Error(ErrorCode::kEmptyCorridor,
                  "no linear bounds separate the profile from obstacles in "
                  "segment " + std::to_string(seg));
    }
    CorridorSegment c{t0, t1, lo->first, lo->second, hi->first, hi->second};
    if (!(c.Lower(t0) < c.Upper(t0) - kEps) || !(c.Lower(t1) < c.Upper(t1) - kEps)) {
      throw Error(ErrorCode::kEmptyCorridor,
                  "corridor collapses in segment " + std::to_string(seg));
    }
    corridor.segments.push_back(c);
  }
  return corridor;
}

}  // namespace intercept::speed
