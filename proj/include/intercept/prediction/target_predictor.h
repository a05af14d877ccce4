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
 * @file target_predictor.h
 * @brief Least-squares polynomial fit of target observations and
 * extrapolation to the interception time.
 *
 * Both coordinates share one time basis (t^n ... t 1), so the coefficients
 * form an (n+1) x 2 matrix whose first row holds the leading coefficients.
 * Time is shifted so the first sample sits at 0 before fitting; evaluation
 * takes absolute time and undoes the shift.
 **/

#pragma once

#include <deque>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "intercept/geometry/vec2.h"

namespace intercept::prediction {

using geometry::Pose;
using geometry::Vec2;

struct Observation {
  double t = 0.0;
  Vec2 p;
};

/// Sliding window of the most recent `capacity` observations.
class ObservationBuffer {
 public:
  explicit ObservationBuffer(size_t capacity);

  /// Appends a sample; drops the oldest when full. Throws Error(kDomain)
  /// unless `t` is later than every stored timestamp.
  void Push(double t, const Vec2& p);

  size_t size() const { return samples_.size(); }
  size_t capacity() const { return capacity_; }
  bool empty() const { return samples_.empty(); }
  const Observation& back() const { return samples_.back(); }

  std::vector<Observation> Snapshot() const {
    return {samples_.begin(), samples_.end()};
  }

 private:
  size_t capacity_;
  std::deque<Observation> samples_;
};

using CoefficientMatrix = Eigen::Matrix<double, Eigen::Dynamic, 2>;

struct PolyTrajectory {
  int degree = 0;
  CoefficientMatrix eta;  // row k holds the t^(degree-k) coefficients
  std::pair<double, double> fit_window{0.0, 0.0};
  double residual_rms = 0.0;
  Observation last_sample;  // used by the zero-velocity heading fallback

  double time_offset() const { return fit_window.first; }
};

PolyTrajectory FitPolynomial(const std::vector<Observation>& samples,
                             int degree);
PolyTrajectory FitPolynomial(const ObservationBuffer& buf, int degree);

Vec2 PredictPosition(const PolyTrajectory& traj, double t);
Vec2 PredictVelocity(const PolyTrajectory& traj, double t);

/// Sum of squared residuals over `samples` (the least-squares objective).
double FitObjective(const PolyTrajectory& traj,
                    const std::vector<Observation>& samples);

/// Predicted pose at absolute time `t`. Heading is the tangent of the fitted
/// trajectory; when the velocity vanishes it falls back to the bearing from
/// the last observation to the predicted point.
Pose InterceptionGoal(const PolyTrajectory& traj, double t);

}  // namespace intercept::prediction
