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

#include "intercept/geometry/obstacle.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "intercept/common/error.h"

namespace intercept::geometry {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Vec2 OutwardNormal(const Vec2& a, const Vec2& b) {
  const Vec2 e = b - a;
  const double len = e.Norm();
  return {e.y / len, -e.x / len};
}

Vec2 ClosestOnSegment(const Vec2& a, const Vec2& b, const Vec2& p) {
  const Vec2 ab = b - a;
  const double len2 = ab.SquaredNorm();
  if (len2 <= 0.0) return a;
  const double u = std::clamp(Dot(p - a, ab) / len2, 0.0, 1.0);
  return a + ab * u;
}

}  // namespace

double SignedArea(const Polygon& poly) {
  double area = 0.0;
  for (size_t i = 0; i < poly.size(); ++i) {
    area += Cross(poly[i], poly[(i + 1) % poly.size()]);
  }
  return 0.5 * area;
}

Polygon MakeCounterClockwise(Polygon poly) {
  if (SignedArea(poly) < 0.0) {
    std::reverse(poly.begin(), poly.end());
  }
  return poly;
}

void Obstacle::Validate() const {
  const size_t n = vertices_at_t0.size();
  if (n < 3) {
    throw Error(ErrorCode::kValidation, "polygon needs >= 3 vertices");
  }
  for (const auto& v : vertices_at_t0) {
    if (!std::isfinite(v.x) || !std::isfinite(v.y)) {
      throw Error(ErrorCode::kValidation, "polygon vertex is not finite");
    }
  }
  if (!(SignedArea(vertices_at_t0) > 1e-12)) {
    throw Error(ErrorCode::kValidation,
                "polygon must be counterclockwise with positive area");
  }
  for (size_t i = 0; i < n; ++i) {
    const Vec2& a = vertices_at_t0[i];
    const Vec2& b = vertices_at_t0[(i + 1) % n];
    const Vec2& c = vertices_at_t0[(i + 2) % n];
    if ((b - a).Norm() < 1e-12) {
      throw Error(ErrorCode::kValidation, "polygon repeats a vertex");
    }
    if (Cross(b - a, c - b) < -1e-12) {
      throw Error(ErrorCode::kValidation, "polygon is not convex");
    }
  }
  if (!(inflation >= 0.0) || !std::isfinite(velocity.x) ||
      !std::isfinite(velocity.y)) {
    throw Error(ErrorCode::kValidation,
                "inflation must be >= 0 and velocity finite");
  }
  if (kind == ObstacleKind::kStatic && velocity.SquaredNorm() > 0.0) {
    throw Error(ErrorCode::kValidation, "velocity must be zero for a static obstacle");
  }
}

std::vector<HalfSpace> Obstacle::HalfSpacesAt(double t) const {
  const size_t n = vertices_at_t0.size();
  const Vec2 shift = velocity * t;
  std::vector<HalfSpace> out;
  out.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    const Vec2 a = vertices_at_t0[i] + shift;
    const Vec2 g = OutwardNormal(vertices_at_t0[i], vertices_at_t0[(i + 1) % n]);
    out.push_back({g, Dot(g, a) + inflation});
  }
  return out;
}

Polygon Obstacle::PolygonAt(double t) const {
  const size_t n = vertices_at_t0.size();
  const Vec2 shift = velocity * t;
  Polygon out;
  out.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    const Vec2& prev = vertices_at_t0[(i + n - 1) % n];
    const Vec2& cur = vertices_at_t0[i];
    const Vec2& next = vertices_at_t0[(i + 1) % n];
    Vec2 v = cur + shift;
    if (inflation > 0.0) {
      const Vec2 n1 = OutwardNormal(prev, cur);
      const Vec2 n2 = OutwardNormal(cur, next);
      v += (n1 + n2) * (inflation / (1.0 + Dot(n1, n2)));
    }
    out.push_back(v);
  }
  return out;
}

bool Obstacle::Contains(const Vec2& p, double t) const {
  for (const auto& hs : HalfSpacesAt(t)) {
    if (Dot(hs.normal, p) > hs.offset) return false;
  }
  return true;
}

std::optional<std::pair<double, double>> Obstacle::CoverageInterval(
    const Vec2& p) const {
  // g . (p) <= g . (v + u t) + r  <=>  -(g . u) t <= g . v + r - g . p
  double lo = -kInf;
  double hi = kInf;
  for (const auto& hs : HalfSpacesAt(0.0)) {
    const double a = -Dot(hs.normal, velocity);
    const double c = hs.offset - Dot(hs.normal, p);
    if (std::abs(a) < 1e-15) {
      if (c < 0.0) return std::nullopt;
      continue;
    }
    if (a > 0.0) {
      hi = std::min(hi, c / a);
    } else {
      lo = std::max(lo, c / a);
    }
  }
  if (lo > hi) return std::nullopt;
  return std::make_pair(lo, hi);
}

bool PolygonContains(const Polygon& poly, const Vec2& p) {
  const size_t n = poly.size();
  for (size_t i = 0; i < n; ++i) {
    if (Cross(poly[(i + 1) % n] - poly[i], p - poly[i]) < 0.0) return false;
  }
  return true;
}

PolygonDistance SignedDistanceToPolygon(const Polygon& poly, const Vec2& p) {
  const size_t n = poly.size();
  double best = kInf;
  Vec2 nearest;
  for (size_t i = 0; i < n; ++i) {
    const Vec2 q = ClosestOnSegment(poly[i], poly[(i + 1) % n], p);
    const double d = Distance(p, q);
    if (d < best) {
      best = d;
      nearest = q;
    }
  }
  return {PolygonContains(poly, p) ? -best : best, nearest};
}

Clearance SignedClearance(const WorldMap& map, const Vec2& p, double t,
                          ObstacleFilter filter) {
  Clearance result;
  result.distance = kInf;
  auto visit = [&](const std::vector<Obstacle>& obstacles) {
    for (const auto& ob : obstacles) {
      const PolygonDistance d = SignedDistanceToPolygon(ob.PolygonAt(t), p);
      if (!result.valid || d.distance < result.distance) {
        result.distance = d.distance;
        result.nearest = d.nearest;
        result.valid = true;
      }
    }
  };
  if (filter != ObstacleFilter::kDynamicOnly) visit(map.static_obstacles);
  if (filter != ObstacleFilter::kStaticOnly) visit(map.dynamic_obstacles);
  return result;
}

bool ObstacleContains(const Obstacle& ob, const Vec2& p, double t) {
  return ob.Contains(p, t);
}

}  // namespace intercept::geometry
