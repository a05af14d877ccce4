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
 * @file target.h
 * @brief Linear target dynamics and noisy position observations.
 *
 * State is (x, y, vx, vy). One step of length dt advances the position by
 * dt * velocity and then adds the control to the velocity; position controls
 * have no effect, so only the velocity channel is stored.
 **/

#pragma once

#include <cstdint>
#include <vector>

#include "intercept/geometry/vec2.h"
#include "intercept/prediction/target_predictor.h"

namespace intercept::sim {

using geometry::Vec2;
using prediction::Observation;

struct TargetState {
  double x = 0.0;
  double y = 0.0;
  double vx = 0.0;
  double vy = 0.0;

  Vec2 position() const { return {x, y}; }
  Vec2 velocity() const { return {vx, vy}; }
  bool operator==(const TargetState&) const = default;
};

struct TargetModel {
  TargetState x0;
  std::vector<Vec2> controls;  // velocity-channel control per step
  double dt = 1.0;

  /// Controls past the end of the list repeat the last one (zero if empty).
  Vec2 ControlAt(int k) const;
  /// Throws Error(kValidation) unless dt > 0 and everything is finite.
  void Validate() const;
};

/// One step of the linear recursion.
TargetState StepTarget(const TargetState& s, const Vec2& control, double dt);

/// States x_1 ... x_steps (x_0 excluded). Throws Error(kDomain) if steps < 1.
std::vector<TargetState> SimulateTarget(const TargetModel& model, int steps);

struct NoiseModel {
  double sigma1 = 0.0;
  double sigma2 = 0.0;
  uint64_t seed = 0;

  void Validate() const;
  /// Noise for step k; depends only on (seed, k).
  Vec2 Sample(int64_t k) const;
};

Vec2 Observe(const TargetState& truth, const NoiseModel& noise, int64_t k);

/// Truth trajectory indexed by simulation time. Step k happens at
/// t_k = t_first + k dt; between steps the target moves at constant
/// velocity, which is exactly what the recursion does to the position.
class TargetTrajectory {
 public:
  TargetTrajectory(TargetModel model, double t_first);

  double t_first() const { return t_first_; }
  double dt() const { return model_.dt; }
  /// Step index k of time t (floor), extending the stored states on demand.
  const TargetState& StateAtStep(int64_t k) const;
  TargetState StateAt(double t) const;
  Vec2 PositionAt(double t) const { return StateAt(t).position(); }

 private:
  TargetModel model_;
  double t_first_;
  mutable std::vector<TargetState> states_;
};

}  // namespace intercept::sim
