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

// Shortest forward path built from turning-circle geometry: circle centres,
// outer/inner tangents and the tangent middle circle for CCC words. Shares no
// code with the library's normalized-frame formulas.

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace intercept::testing {

struct OraclePose {
  double x, y, theta;
};

namespace dubins_oracle_detail {

constexpr double kTau = 2.0 * std::numbers::pi;

inline double Ccw(double from, double to) {
  double d = std::fmod(to - from, kTau);
  if (d < 0) d += kTau;
  if (d > kTau - 1e-10) d = 0.0;
  return d;
}

struct C {
  double x, y;
};

// side = +1 left turn circle, -1 right turn circle.
inline C Center(const OraclePose& p, int side, double r) {
  return {p.x - side * r * std::sin(p.theta), p.y + side * r * std::cos(p.theta)};
}

// Heading of a vehicle at `pt` moving on circle `c` with turn `side`.
inline double HeadingOnCircle(C c, C pt, int side) {
  const double ux = pt.x - c.x;
  const double uy = pt.y - c.y;
  return side > 0 ? std::atan2(ux, -uy) : std::atan2(-ux, uy);
}

inline double Turn(double from, double to, int side) {
  return side > 0 ? Ccw(from, to) : Ccw(to, from);
}

inline double CscLength(const OraclePose& a, const OraclePose& b, double r,
                        int s1, int s2) {
  const C c1 = Center(a, s1, r);
  const C c2 = Center(b, s2, r);
  const double dx = c2.x - c1.x;
  const double dy = c2.y - c1.y;
  const double dist = std::hypot(dx, dy);
  double psi;
  double straight;
  if (s1 == s2) {
    straight = dist;
    psi = dist < 1e-12 ? a.theta : std::atan2(dy, dx);
  } else {
    if (dist < 2.0 * r) return std::numeric_limits<double>::infinity();
    straight = std::sqrt(dist * dist - 4.0 * r * r);
    const double phi = std::atan2(dy, dx);
    psi = s1 > 0 ? phi + std::atan2(2.0 * r, straight)
                 : phi - std::atan2(2.0 * r, straight);
  }
  return r * (Turn(a.theta, psi, s1) + Turn(psi, b.theta, s2)) + straight;
}

inline double CccLength(const OraclePose& a, const OraclePose& b, double r,
                        int s) {
  const C c1 = Center(a, s, r);
  const C c2 = Center(b, s, r);
  const double dx = c2.x - c1.x;
  const double dy = c2.y - c1.y;
  const double dist = std::hypot(dx, dy);
  if (dist > 4.0 * r) return std::numeric_limits<double>::infinity();
  const double mx = 0.5 * (c1.x + c2.x);
  const double my = 0.5 * (c1.y + c2.y);
  const double h = std::sqrt(std::max(0.0, 4.0 * r * r - 0.25 * dist * dist));
  double best = std::numeric_limits<double>::infinity();
  for (int sign : {-1, 1}) {
    C c3{mx, my};
    if (dist > 1e-12) {
      c3.x += sign * h * (-dy / dist);
      c3.y += sign * h * (dx / dist);
    } else {
      c3.x += sign * 2.0 * r;
    }
    const C t1{0.5 * (c1.x + c3.x), 0.5 * (c1.y + c3.y)};
    const C t2{0.5 * (c3.x + c2.x), 0.5 * (c3.y + c2.y)};
    const double psi1 = HeadingOnCircle(c1, t1, s);
    const double psi2 = HeadingOnCircle(c2, t2, s);
    const double len = r * (Turn(a.theta, psi1, s) + Turn(psi1, psi2, -s) +
                            Turn(psi2, b.theta, s));
    best = std::min(best, len);
  }
  return best;
}

}  // namespace dubins_oracle_detail

/// Lengths in word order LSL, RSR, LSR, RSL, RLR, LRL (inf when absent).
inline std::vector<double> OracleDubinsLengths(const OraclePose& a,
                                               const OraclePose& b, double r) {
  using namespace dubins_oracle_detail;
  return {CscLength(a, b, r, +1, +1), CscLength(a, b, r, -1, -1),
          CscLength(a, b, r, +1, -1), CscLength(a, b, r, -1, +1),
          CccLength(a, b, r, -1),     CccLength(a, b, r, +1)};
}

inline double OracleDubinsShortest(const OraclePose& a, const OraclePose& b,
                                   double r) {
  const auto lengths = OracleDubinsLengths(a, b, r);
  return *std::min_element(lengths.begin(), lengths.end());
}

}  // namespace intercept::testing
