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

#include "intercept/planning/path_smoother.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "intercept/common/error.h"

namespace intercept::planning {
namespace {

using geometry::Cross;
using geometry::Dot;
using geometry::ObstacleFilter;
using geometry::SignedClearance;

constexpr double kDegenerate = 1e-9;
constexpr int kMaxHalvings = 40;

void CheckSegments(const std::vector<Vec2>& pts) {
  if (pts.size() < 3) {
    throw Error(ErrorCode::kDomain, "path needs at least 3 points");
  }
  for (size_t i = 1; i < pts.size(); ++i) {
    if ((pts[i] - pts[i - 1]).Norm() <= kDegenerate) {
      throw Error(ErrorCode::kDegenerateSegment,
                  "segment " + std::to_string(i - 1) + " has zero length");
    }
  }
}

double TurnAngle(const Vec2& a, const Vec2& b) {
  return std::atan2(Cross(a, b), Dot(a, b));
}

// Curvature excess at interior point i and its gradients w.r.t. a = x_i -
// x_{i-1} and b = x_{i+1} - x_i.
struct CurvatureExcess {
  double excess = 0.0;  // max(0, kappa - kappa_max)
  Vec2 dkappa_da;
  Vec2 dkappa_db;
};

CurvatureExcess Curvature(const Vec2& a, const Vec2& b, double kappa_max) {
  CurvatureExcess out;
  const double phi = TurnAngle(a, b);
  const double na = a.Norm();
  const double kappa = std::abs(phi) / na;
  if (kappa <= kappa_max) return out;
  out.excess = kappa - kappa_max;
  // phi = atan2(c, d): c = a x b, d = a . b.
  const double c = Cross(a, b);
  const double d = Dot(a, b);
  const double den = c * c + d * d;
  const Vec2 dc_da{b.y, -b.x};
  const Vec2 dc_db{-a.y, a.x};
  const Vec2 dphi_da = (dc_da * d - b * c) / den;
  const Vec2 dphi_db = (dc_db * d - a * c) / den;
  const double sign = phi >= 0.0 ? 1.0 : -1.0;
  out.dkappa_da = dphi_da * (sign / na) - a * (std::abs(phi) / (na * na * na));
  out.dkappa_db = dphi_db * (sign / na);
  return out;
}

bool AllInBounds(const std::vector<Vec2>& pts, const WorldMap& map) {
  return std::all_of(pts.begin(), pts.end(),
                     [&](const Vec2& p) { return map.InBounds(p); });
}

}  // namespace

void SmootherConfig::Validate() const {
  const auto positive = [](double v, const char* name) {
    if (!(v > 0.0)) {
      throw Error(ErrorCode::kValidation, std::string(name) + " must be > 0");
    }
  };
  positive(w_obs, "w_obs");
  positive(w_cur, "w_cur");
  positive(w_smo, "w_smo");
  positive(d_max, "d_max");
  positive(kappa_max, "kappa_max");
  positive(alpha_obs, "alpha_obs");
  positive(alpha_cur, "alpha_cur");
  positive(alpha_smo, "alpha_smo");
  if (max_iters < 1) {
    throw Error(ErrorCode::kValidation, "max_iters must be >= 1");
  }
  if (!(converge_tol >= 0.0)) {
    throw Error(ErrorCode::kValidation, "converge_tol must be >= 0");
  }
}

bool PathPolyline::IsFixed(size_t i) const {
  if (i == 0 || i + 1 == points.size()) return true;
  return i < fixed.size() && fixed[i];
}

ObjectiveTerms ComputeObjectiveTerms(const PathPolyline& path,
                                     const WorldMap& map,
                                     const SmootherConfig& cfg) {
  const auto& x = path.points;
  CheckSegments(x);
  ObjectiveTerms j;
  for (const Vec2& p : x) {
    const auto c = SignedClearance(map, p, 0.0, ObstacleFilter::kStaticOnly);
    if (c.valid && c.distance < cfg.d_max) {
      j.obs += (c.distance - cfg.d_max) * (c.distance - cfg.d_max);
    }
  }
  for (size_t i = 1; i + 1 < x.size(); ++i) {
    const Vec2 a = x[i] - x[i - 1];
    const Vec2 b = x[i + 1] - x[i];
    const double e = Curvature(a, b, cfg.kappa_max).excess;
    j.cur += e * e;
    j.smo += (b - a).SquaredNorm();
  }
  return j;
}

TermGradients ComputeGradients(const PathPolyline& path, const WorldMap& map,
                               const SmootherConfig& cfg) {
  const auto& x = path.points;
  CheckSegments(x);
  const size_t n = x.size();
  TermGradients g;
  g.obs.assign(n, {});
  g.cur.assign(n, {});
  g.smo.assign(n, {});

  for (size_t i = 0; i < n; ++i) {
    const auto c = SignedClearance(map, x[i], 0.0, ObstacleFilter::kStaticOnly);
    if (!c.valid || c.distance >= cfg.d_max) continue;
    const Vec2 away = x[i] - c.nearest;
    const double len = away.Norm();
    if (len <= 0.0) continue;
    // Gradient of the signed distance: outward unit normal.
    const Vec2 grad_d = away * ((c.distance >= 0.0 ? 1.0 : -1.0) / len);
    g.obs[i] = grad_d * (2.0 * (c.distance - cfg.d_max));
  }

  for (size_t i = 1; i + 1 < n; ++i) {
    const Vec2 a = x[i] - x[i - 1];
    const Vec2 b = x[i + 1] - x[i];
    const auto k = Curvature(a, b, cfg.kappa_max);
    if (k.excess > 0.0) {
      const double s = 2.0 * k.excess;
      g.cur[i - 1] -= k.dkappa_da * s;
      g.cur[i] += (k.dkappa_da - k.dkappa_db) * s;
      g.cur[i + 1] += k.dkappa_db * s;
    }
    const Vec2 e = (b - a) * 2.0;  // d/dx of |x_{i+1} - 2 x_i + x_{i-1}|^2
    g.smo[i - 1] += e;
    g.smo[i] -= e * 2.0;
    g.smo[i + 1] += e;
  }

  for (size_t i = 0; i < n; ++i) {
    if (path.IsFixed(i)) {
      g.obs[i] = {};
      g.cur[i] = {};
      g.smo[i] = {};
    }
  }
  return g;
}

double MaxDiscreteCurvature(const std::vector<Vec2>& points) {
  double best = 0.0;
  for (size_t i = 1; i + 1 < points.size(); ++i) {
    const Vec2 a = points[i] - points[i - 1];
    const Vec2 b = points[i + 1] - points[i];
    const double na = a.Norm();
    if (na <= kDegenerate) continue;
    best = std::max(best, std::abs(TurnAngle(a, b)) / na);
  }
  return best;
}

double MinPathClearance(const std::vector<Vec2>& points, const WorldMap& map) {
  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < points.size(); ++i) {
    best = std::min(best, SignedClearance(map, points[i], 0.0,
                                          ObstacleFilter::kStaticOnly)
                              .distance);
    if (i > 0) {
      const Vec2 mid = (points[i] + points[i - 1]) * 0.5;
      best = std::min(
          best, SignedClearance(map, mid, 0.0, ObstacleFilter::kStaticOnly)
                    .distance);
    }
  }
  return best;
}

SmoothResult Smooth(const PathPolyline& path, const WorldMap& map,
                    const SmootherConfig& cfg) {
  cfg.Validate();
  CheckSegments(path.points);
  SmoothResult result;
  result.path = path;
  auto& x = result.path.points;
  const double floor_clearance =
      std::min(MinPathClearance(x, map), cfg.d_max);
  ObjectiveTerms terms = ComputeObjectiveTerms(result.path, map, cfg);
  double total = terms.Total(cfg);

  for (int it = 0; it < cfg.max_iters; ++it) {
    const TermGradients g = ComputeGradients(result.path, map, cfg);
    bool moving = false;
    for (size_t i = 0; i < x.size() && !moving; ++i) {
      moving = g.obs[i].SquaredNorm() + g.cur[i].SquaredNorm() +
                   g.smo[i].SquaredNorm() > 0.0;
    }
    if (!moving) break;
    result.iterations = it + 1;
    double scale = 1.0;
    bool accepted = false;
    PathPolyline trial = result.path;
    ObjectiveTerms trial_terms;
    for (int h = 0; h < kMaxHalvings; ++h, scale *= 0.5) {
      for (size_t i = 0; i < x.size(); ++i) {
        trial.points[i] =
            x[i] - (g.obs[i] * (cfg.alpha_obs * cfg.w_obs) +
                    g.cur[i] * (cfg.alpha_cur * cfg.w_cur) +
                    g.smo[i] * (cfg.alpha_smo * cfg.w_smo)) *
                       scale;
      }
      try {
        trial_terms = ComputeObjectiveTerms(trial, map, cfg);
      } catch (const Error&) {
        continue;  // a step that collapses a segment is rejected
      }
      if (trial_terms.Total(cfg) > total) continue;
      if (!AllInBounds(trial.points, map)) continue;
      if (MinPathClearance(trial.points, map) < floor_clearance) continue;
      accepted = true;
      break;
    }
    if (!accepted) break;
    const double new_total = trial_terms.Total(cfg);
    const double change = total - new_total;
    result.path = trial;
    terms = trial_terms;
    total = new_total;
    result.trace.push_back({it + 1, terms.obs, terms.cur, terms.smo, scale});
    if (change < cfg.converge_tol) break;
  }
  return result;
}

}  // namespace intercept::planning
