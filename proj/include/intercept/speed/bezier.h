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
 * @file bezier.h
 * @brief Piecewise Bezier speed curves s(t).
 *
 * A segment stores scaled control points c: on [T_j, T_j + h] the station is
 * s = h B(tau) with tau = (t - T_j) / h, so speed is B'(tau) and
 * acceleration is B''(tau) / h.
 **/

#pragma once

#include <vector>

#include <Eigen/Core>

namespace intercept::speed {

/// Bernstein basis polynomial b_{n,i}(tau).
double Bernstein(int n, int i, double tau);

/// Value of the Bezier polynomial with coefficients `control` at tau.
double DeCasteljau(const std::vector<double>& control, double tau);

/// Control points of the derivative curve: n (c_{i+1} - c_i).
std::vector<double> DerivativeControl(const std::vector<double>& control);

/// G(i, k) = integral over [0, 1] of b_{m,i} b_{m,k}.
Eigen::MatrixXd BernsteinGram(int m);

struct ProfileSample {
  double t = 0.0;
  double s = 0.0;
  double v = 0.0;
  double a = 0.0;
};

struct BezierSegment {
  std::vector<double> control;
  double h = 1.0;
  double t_start = 0.0;

  int order() const { return static_cast<int>(control.size()) - 1; }
  double t_end() const { return t_start + h; }

  /// Throws Error(kDomain) unless order >= 4 and h > 0.
  void Validate() const;
  /// Throws Error(kDomain) for t outside the segment (1e-9 slack).
  ProfileSample Evaluate(double t) const;
  /// Closed-form integral of squared acceleration over the segment.
  double AccelerationIntegral() const;
};

class SpeedProfile {
 public:
  SpeedProfile() = default;
  explicit SpeedProfile(std::vector<BezierSegment> segments);

  const std::vector<BezierSegment>& segments() const { return segments_; }
  double horizon() const;

  /// t is clamped to [0, T]; joins evaluate on the later segment.
  ProfileSample Evaluate(double t) const;
  /// Samples at 0, dt, 2 dt, ... and always at T.
  std::vector<ProfileSample> Sample(double dt) const;

  double AccelerationIntegral() const;
  /// sqrt(AccelerationIntegral / T).
  double EnergyMetric() const;
  /// Maximum of |acceleration| from dense sampling of every segment.
  double MaxAbsAcceleration() const;
  /// Largest jump in s, speed or acceleration across a join.
  double MaxJoinDiscontinuity() const;

  /// Throws Error(kDomain) unless segments tile [0, T], joins are continuous
  /// within 1e-6, s(0) = 0 and speed stays >= -1e-9.
  void Validate() const;

 private:
  std::vector<BezierSegment> segments_;
};

}  // namespace intercept::speed
