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

#include "intercept/geometry/dubins.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "intercept/common/error.h"
#include "intercept/geometry/angle.h"

namespace intercept::geometry {
namespace {

constexpr double kSnap = 1e-10;

double Mod2Pi(double theta) {
  const double r = WrapTwoPi(theta);
  return r > kTwoPi - kSnap ? 0.0 : r;
}

// Segment curvature sign per word: +1 left, -1 right, 0 straight.
constexpr std::array<std::array<int, 3>, 6> kSegmentTurn = {{
    {+1, 0, +1},   // LSL
    {-1, 0, -1},   // RSR
    {+1, 0, -1},   // LSR
    {-1, 0, +1},   // RSL
    {-1, +1, -1},  // RLR
    {+1, -1, +1},  // LRL
}};

struct Normalized {
  double alpha;
  double beta;
  double d;
};

// Returns normalized (t, p, q) or nullopt.
std::optional<std::array<double, 3>> SolveWord(const Normalized& n,
                                               DubinsWord word) {
  const double sa = std::sin(n.alpha);
  const double sb = std::sin(n.beta);
  const double ca = std::cos(n.alpha);
  const double cb = std::cos(n.beta);
  const double c_ab = std::cos(n.alpha - n.beta);
  const double d = n.d;

  switch (word) {
    case DubinsWord::kLSL: {
      const double p_sq = 2.0 + d * d - 2.0 * c_ab + 2.0 * d * (sa - sb);
      if (p_sq < 0.0) return std::nullopt;
      const double tmp = std::atan2(cb - ca, d + sa - sb);
      return std::array<double, 3>{Mod2Pi(tmp - n.alpha), std::sqrt(p_sq),
                                   Mod2Pi(n.beta - tmp)};
    }
    case DubinsWord::kRSR: {
      const double p_sq = 2.0 + d * d - 2.0 * c_ab + 2.0 * d * (sb - sa);
      if (p_sq < 0.0) return std::nullopt;
      const double tmp = std::atan2(ca - cb, d - sa + sb);
      return std::array<double, 3>{Mod2Pi(n.alpha - tmp), std::sqrt(p_sq),
                                   Mod2Pi(tmp - n.beta)};
    }
    case DubinsWord::kLSR: {
      const double p_sq = -2.0 + d * d + 2.0 * c_ab + 2.0 * d * (sa + sb);
      if (p_sq < 0.0) return std::nullopt;
      const double p = std::sqrt(p_sq);
      const double tmp =
          std::atan2(-ca - cb, d + sa + sb) - std::atan2(-2.0, p);
      return std::array<double, 3>{Mod2Pi(tmp - n.alpha), p,
                                   Mod2Pi(tmp - n.beta)};
    }
    case DubinsWord::kRSL: {
      const double p_sq = -2.0 + d * d + 2.0 * c_ab - 2.0 * d * (sa + sb);
      if (p_sq < 0.0) return std::nullopt;
      const double p = std::sqrt(p_sq);
      const double tmp = std::atan2(ca + cb, d - sa - sb) - std::atan2(2.0, p);
      return std::array<double, 3>{Mod2Pi(n.alpha - tmp), p,
                                   Mod2Pi(n.beta - tmp)};
    }
    case DubinsWord::kRLR: {
      const double tmp = (6.0 - d * d + 2.0 * c_ab + 2.0 * d * (sa - sb)) / 8.0;
      if (std::abs(tmp) > 1.0) return std::nullopt;
      const double phi = std::atan2(ca - cb, d - sa + sb);
      const double p = Mod2Pi(kTwoPi - std::acos(tmp));
      const double t = Mod2Pi(n.alpha - phi + Mod2Pi(p / 2.0));
      return std::array<double, 3>{t, p, Mod2Pi(n.alpha - n.beta - t + p)};
    }
    case DubinsWord::kLRL: {
      const double tmp = (6.0 - d * d + 2.0 * c_ab + 2.0 * d * (sb - sa)) / 8.0;
      if (std::abs(tmp) > 1.0) return std::nullopt;
      const double phi = std::atan2(ca - cb, d + sa - sb);
      const double p = Mod2Pi(kTwoPi - std::acos(tmp));
      const double t = Mod2Pi(-n.alpha - phi + p / 2.0);
      return std::array<double, 3>{t, p, Mod2Pi(n.beta - n.alpha - t + p)};
    }
  }
  return std::nullopt;
}

Normalized Normalize(const Pose& start, const Pose& goal, double radius) {
  const double dx = goal.x - start.x;
  const double dy = goal.y - start.y;
  const double theta = std::atan2(dy, dx);
  return {Mod2Pi(start.theta - theta), Mod2Pi(goal.theta - theta),
          std::hypot(dx, dy) / radius};
}

Pose Advance(const Pose& p, int turn, double length, double radius) {
  if (turn == 0) {
    return {p.x + length * std::cos(p.theta), p.y + length * std::sin(p.theta),
            p.theta};
  }
  const double kappa = turn / radius;
  const double theta1 = p.theta + kappa * length;
  return {p.x + (std::sin(theta1) - std::sin(p.theta)) / kappa,
          p.y - (std::cos(theta1) - std::cos(p.theta)) / kappa,
          NormalizeAngle(theta1)};
}

}  // namespace

std::string_view DubinsWordName(DubinsWord word) {
  static constexpr std::array<std::string_view, 6> kNames = {
      "LSL", "RSR", "LSR", "RSL", "RLR", "LRL"};
  return kNames[static_cast<size_t>(word)];
}

Pose DubinsPath::Sample(double arc) const {
  arc = std::clamp(arc, 0.0, total_length);
  const auto& turns = kSegmentTurn[static_cast<size_t>(word)];
  Pose p{start.x, start.y, NormalizeAngle(start.theta)};
  for (size_t i = 0; i < 3; ++i) {
    const double step = std::min(arc, segment_lengths[i]);
    if (step > 0.0) {
      p = Advance(p, turns[i], step, radius);
    }
    arc -= step;
    if (arc <= 0.0) break;
  }
  return p;
}

std::vector<Pose> DubinsPath::SampleUniform(double spacing) const {
  std::vector<Pose> out;
  const int pieces =
      std::max(1, static_cast<int>(std::ceil(total_length / spacing - 1e-9)));
  out.reserve(pieces + 1);
  for (int i = 0; i <= pieces; ++i) {
    out.push_back(Sample(total_length * i / pieces));
  }
  return out;
}

std::optional<DubinsPath> DubinsForWord(const Pose& start, const Pose& goal,
                                        double radius, DubinsWord word) {
  if (!(radius > 0.0)) {
    throw Error(ErrorCode::kDomain, "Dubins radius must be positive");
  }
  const auto tpq = SolveWord(Normalize(start, goal, radius), word);
  if (!tpq) return std::nullopt;
  DubinsPath path;
  path.start = start;
  path.word = word;
  path.radius = radius;
  for (size_t i = 0; i < 3; ++i) {
    path.segment_lengths[i] = (*tpq)[i] * radius;
  }
  path.total_length =
      path.segment_lengths[0] + path.segment_lengths[1] + path.segment_lengths[2];
  return path;
}

DubinsPath DubinsShortest(const Pose& start, const Pose& goal, double radius) {
  if (!(radius > 0.0)) {
    throw Error(ErrorCode::kDomain, "Dubins radius must be positive");
  }
  const double gap = std::hypot(goal.x - start.x, goal.y - start.y);
  if (gap < 1e-12 &&
      std::abs(NormalizeAngle(goal.theta - start.theta)) < 1e-12) {
    DubinsPath path;
    path.start = start;
    path.radius = radius;
    return path;
  }
  std::optional<DubinsPath> best;
  for (DubinsWord word : kAllDubinsWords) {
    auto candidate = DubinsForWord(start, goal, radius, word);
    // Lengths within rounding of each other count as ties; the earlier word
    // is kept.
    if (candidate &&
        (!best || candidate->total_length <
                      best->total_length - 1e-12 * (1.0 + best->total_length))) {
      best = candidate;
    }
  }
  // Some word always exists for distinct poses.
  return *best;
}

}  // namespace intercept::geometry
