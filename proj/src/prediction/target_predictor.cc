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

#include "intercept/prediction/target_predictor.h"

#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "intercept/common/error.h"

namespace intercept::prediction {
namespace {

constexpr double kRankThreshold = 1e-12;
constexpr double kStillSpeed = 1e-9;
constexpr double kDistinctTime = 1e-9;

// Timestamps closer than kDistinctTime (relative) count as one.
Eigen::Index DistinctTimes(const std::vector<Observation>& samples) {
  Eigen::Index count = samples.empty() ? 0 : 1;
  double anchor = samples.empty() ? 0.0 : samples.front().t;
  for (const auto& s : samples) {
    if (s.t - anchor > kDistinctTime * (1.0 + std::abs(anchor))) {
      ++count;
      anchor = s.t;
    }
  }
  return count;
}

}  // namespace

ObservationBuffer::ObservationBuffer(size_t capacity) : capacity_(capacity) {
  if (capacity == 0) {
    throw Error(ErrorCode::kDomain, "observation buffer capacity must be > 0");
  }
}

void ObservationBuffer::Push(double t, const Vec2& p) {
  if (!std::isfinite(t) || !std::isfinite(p.x) || !std::isfinite(p.y)) {
    throw Error(ErrorCode::kDomain, "observation must be finite");
  }
  if (!samples_.empty() && !(t > samples_.back().t)) {
    throw Error(ErrorCode::kDomain, "observation timestamps must increase");
  }
  if (samples_.size() == capacity_) {
    samples_.pop_front();
  }
  samples_.push_back({t, p});
}

PolyTrajectory FitPolynomial(const std::vector<Observation>& samples,
                             int degree) {
  if (degree < 0) {
    throw Error(ErrorCode::kDomain, "polynomial degree must be >= 0");
  }
  const auto rows = static_cast<Eigen::Index>(samples.size());
  const Eigen::Index cols = degree + 1;
  if (rows < cols) {
    throw Error(ErrorCode::kSingularFit,
                "need at least degree + 1 = " + std::to_string(cols) +
                    " samples, got " + std::to_string(rows));
  }
  if (DistinctTimes(samples) < cols) {
    throw Error(ErrorCode::kSingularFit,
                "observation times are repeated or nearly repeated");
  }
  const double t0 = samples.front().t;
  const double span = std::max(samples.back().t - t0, 1e-300);

  // Basis in normalized time u = (t - t0) / span for conditioning.
  Eigen::MatrixXd basis(rows, cols);
  Eigen::Matrix<double, Eigen::Dynamic, 2> data(rows, 2);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const double u = (samples[i].t - t0) / span;
    double power = 1.0;
    for (Eigen::Index k = cols - 1; k >= 0; --k) {
      basis(i, k) = power;
      power *= u;
    }
    data(i, 0) = samples[i].p.x;
    data(i, 1) = samples[i].p.y;
  }

  const Eigen::MatrixXd normal = basis.transpose() * basis;
  const Eigen::Matrix<double, Eigen::Dynamic, 2> rhs = basis.transpose() * data;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(normal);
  qr.setThreshold(kRankThreshold);
  if (qr.rank() < cols) {
    throw Error(ErrorCode::kSingularFit,
                "observation times do not determine a degree-" +
                    std::to_string(degree) + " fit");
  }
  const Eigen::Matrix<double, Eigen::Dynamic, 2> scaled = qr.solve(rhs);

  PolyTrajectory traj;
  traj.degree = degree;
  traj.eta.resize(cols, 2);
  for (Eigen::Index k = 0; k < cols; ++k) {
    const int power = degree - static_cast<int>(k);
    traj.eta.row(k) = scaled.row(k) / std::pow(span, power);
  }
  traj.fit_window = {t0, samples.back().t};
  traj.last_sample = samples.back();
  traj.residual_rms =
      std::sqrt(FitObjective(traj, samples) / static_cast<double>(rows));
  return traj;
}

PolyTrajectory FitPolynomial(const ObservationBuffer& buf, int degree) {
  return FitPolynomial(buf.Snapshot(), degree);
}

Vec2 PredictPosition(const PolyTrajectory& traj, double t) {
  const double u = t - traj.time_offset();
  Vec2 p;
  for (Eigen::Index k = 0; k < traj.eta.rows(); ++k) {
    p.x = p.x * u + traj.eta(k, 0);
    p.y = p.y * u + traj.eta(k, 1);
  }
  return p;
}

Vec2 PredictVelocity(const PolyTrajectory& traj, double t) {
  const double u = t - traj.time_offset();
  Vec2 v;
  for (Eigen::Index k = 0; k + 1 < traj.eta.rows(); ++k) {
    const double power = traj.degree - static_cast<double>(k);
    v.x = v.x * u + power * traj.eta(k, 0);
    v.y = v.y * u + power * traj.eta(k, 1);
  }
  return v;
}

double FitObjective(const PolyTrajectory& traj,
                    const std::vector<Observation>& samples) {
  double sum = 0.0;
  for (const auto& s : samples) {
    sum += (PredictPosition(traj, s.t) - s.p).SquaredNorm();
  }
  return sum;
}

Pose InterceptionGoal(const PolyTrajectory& traj, double t) {
  if (!std::isfinite(t)) {
    throw Error(ErrorCode::kDomain, "interception time must be finite");
  }
  const Vec2 p = PredictPosition(traj, t);
  const Vec2 v = PredictVelocity(traj, t);
  double heading = 0.0;
  if (v.Norm() >= kStillSpeed) {
    heading = std::atan2(v.y, v.x);
  } else {
    const Vec2 d = p - traj.last_sample.p;
    if (d.Norm() >= kStillSpeed) heading = std::atan2(d.y, d.x);
  }
  return {p.x, p.y, heading};
}

}  // namespace intercept::prediction
