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

#include "intercept/sim/target.h"

#include <cmath>
#include <random>

#include "intercept/common/error.h"

namespace intercept::sim {
namespace {

bool Finite(const TargetState& s) {
  return std::isfinite(s.x) && std::isfinite(s.y) && std::isfinite(s.vx) &&
         std::isfinite(s.vy);
}

// SplitMix64 finalizer; spreads (seed, k) into independent stream seeds.
uint64_t Mix(uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

Vec2 TargetModel::ControlAt(int k) const {
  if (controls.empty()) return {};
  if (k < 0) return controls.front();
  return controls[std::min<size_t>(static_cast<size_t>(k), controls.size() - 1)];
}

void TargetModel::Validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw Error(ErrorCode::kValidation, "dt must be > 0");
  }
  if (!Finite(x0)) throw Error(ErrorCode::kValidation, "x0 must be finite");
  for (const Vec2& u : controls) {
    if (!std::isfinite(u.x) || !std::isfinite(u.y)) {
      throw Error(ErrorCode::kValidation, "controls must be finite");
    }
  }
}

TargetState StepTarget(const TargetState& s, const Vec2& control, double dt) {
  return {s.x + dt * s.vx, s.y + dt * s.vy, s.vx + control.x, s.vy + control.y};
}

std::vector<TargetState> SimulateTarget(const TargetModel& model, int steps) {
  if (steps < 1) throw Error(ErrorCode::kDomain, "steps must be >= 1");
  model.Validate();
  std::vector<TargetState> out;
  out.reserve(steps);
  TargetState s = model.x0;
  for (int k = 0; k < steps; ++k) {
    s = StepTarget(s, model.ControlAt(k), model.dt);
    out.push_back(s);
  }
  return out;
}

void NoiseModel::Validate() const {
  if (!(sigma1 >= 0.0) || !(sigma2 >= 0.0)) {
    throw Error(ErrorCode::kValidation, "sigma1 and sigma2 must be >= 0");
  }
}

Vec2 NoiseModel::Sample(int64_t k) const {
  std::mt19937_64 rng(Mix(seed ^ Mix(static_cast<uint64_t>(k))));
  std::normal_distribution<double> n(0.0, 1.0);
  const double ex = n(rng);
  const double ey = n(rng);
  return {sigma1 * ex, sigma2 * ey};
}

Vec2 Observe(const TargetState& truth, const NoiseModel& noise, int64_t k) {
  return truth.position() + noise.Sample(k);
}

TargetTrajectory::TargetTrajectory(TargetModel model, double t_first)
    : model_(std::move(model)), t_first_(t_first) {
  model_.Validate();
  states_.push_back(model_.x0);
}

const TargetState& TargetTrajectory::StateAtStep(int64_t k) const {
  if (k < 0) throw Error(ErrorCode::kDomain, "target step before the first one");
  while (static_cast<int64_t>(states_.size()) <= k) {
    const int step = static_cast<int>(states_.size()) - 1;
    states_.push_back(StepTarget(states_.back(), model_.ControlAt(step), model_.dt));
  }
  return states_[static_cast<size_t>(k)];
}

TargetState TargetTrajectory::StateAt(double t) const {
  const double u = (t - t_first_) / model_.dt;
  if (u < -1e-9) throw Error(ErrorCode::kDomain, "time before the first step");
  // Snap to a step when within rounding of it.
  const double nearest = std::round(u);
  const int64_t k = std::abs(u - nearest) < 1e-9 ? static_cast<int64_t>(nearest)
                                                 : static_cast<int64_t>(std::floor(u));
  TargetState s = StateAtStep(k);
  const double tau = std::max(0.0, t - (t_first_ + k * model_.dt));
  s.x += tau * s.vx;
  s.y += tau * s.vy;
  return s;
}

}  // namespace intercept::sim
