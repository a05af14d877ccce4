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

#include "intercept/speed/bezier.h"

#include <algorithm>
#include <cmath>

#include "intercept/common/error.h"

namespace intercept::speed {
namespace {

constexpr double kTimeSlack = 1e-9;
constexpr int kDenseSamples = 200;

double Choose(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

double Bernstein(int n, int i, double tau) {
  if (i < 0 || i > n) return 0.0;
  return Choose(n, i) * std::pow(tau, i) * std::pow(1.0 - tau, n - i);
}

double DeCasteljau(const std::vector<double>& control, double tau) {
  if (control.empty()) return 0.0;
  std::vector<double> work = control;
  for (size_t level = work.size() - 1; level > 0; --level) {
    for (size_t i = 0; i < level; ++i) {
      work[i] = (1.0 - tau) * work[i] + tau * work[i + 1];
    }
  }
  return work[0];
}

std::vector<double> DerivativeControl(const std::vector<double>& control) {
  if (control.size() < 2) return {0.0};
  const double n = static_cast<double>(control.size() - 1);
  std::vector<double> out(control.size() - 1);
  for (size_t i = 0; i + 1 < control.size(); ++i) {
    out[i] = n * (control[i + 1] - control[i]);
  }
  return out;
}

Eigen::MatrixXd BernsteinGram(int m) {
  if (m < 0) throw Error(ErrorCode::kDomain, "Gram degree must be >= 0");
  Eigen::MatrixXd g(m + 1, m + 1);
  for (int i = 0; i <= m; ++i) {
    for (int k = 0; k <= m; ++k) {
      g(i, k) = Choose(m, i) * Choose(m, k) /
                ((2.0 * m + 1.0) * Choose(2 * m, i + k));
    }
  }
  return g;
}

void BezierSegment::Validate() const {
  if (order() < 4) {
    throw Error(ErrorCode::kDomain, "Bezier order must be >= 4");
  }
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw Error(ErrorCode::kDomain, "Bezier time scale must be positive");
  }
}

ProfileSample BezierSegment::Evaluate(double t) const {
  if (t < t_start - kTimeSlack || t > t_end() + kTimeSlack) {
    throw Error(ErrorCode::kDomain, "time outside Bezier segment");
  }
  const double tau = std::clamp((t - t_start) / h, 0.0, 1.0);
  const std::vector<double> d1 = DerivativeControl(control);
  const std::vector<double> d2 = DerivativeControl(d1);
  return {t, h * DeCasteljau(control, tau), DeCasteljau(d1, tau),
          DeCasteljau(d2, tau) / h};
}

double BezierSegment::AccelerationIntegral() const {
  const std::vector<double> d2 = DerivativeControl(DerivativeControl(control));
  const Eigen::Map<const Eigen::VectorXd> v(d2.data(),
                                            static_cast<Eigen::Index>(d2.size()));
  const Eigen::MatrixXd g = BernsteinGram(static_cast<int>(d2.size()) - 1);
  return v.dot(g * v) / h;
}

SpeedProfile::SpeedProfile(std::vector<BezierSegment> segments)
    : segments_(std::move(segments)) {}

double SpeedProfile::horizon() const {
  return segments_.empty() ? 0.0 : segments_.back().t_end();
}

ProfileSample SpeedProfile::Evaluate(double t) const {
  if (segments_.empty()) throw Error(ErrorCode::kDomain, "empty speed profile");
  t = std::clamp(t, 0.0, horizon());
  auto it = std::upper_bound(
      segments_.begin(), segments_.end(), t,
      [](double value, const BezierSegment& seg) { return value < seg.t_start; });
  const BezierSegment& seg =
      it == segments_.begin() ? segments_.front() : *std::prev(it);
  ProfileSample out = seg.Evaluate(std::min(t, seg.t_end()));
  out.t = t;
  return out;
}

std::vector<ProfileSample> SpeedProfile::Sample(double dt) const {
  if (!(dt > 0.0)) throw Error(ErrorCode::kDomain, "sample step must be > 0");
  const double T = horizon();
  std::vector<ProfileSample> out;
  const auto steps = static_cast<long>(std::floor(T / dt + 1e-9));
  for (long k = 0; k <= steps; ++k) out.push_back(Evaluate(k * dt));
  if (T - steps * dt > 1e-9) out.push_back(Evaluate(T));
  return out;
}

double SpeedProfile::AccelerationIntegral() const {
  double sum = 0.0;
  for (const auto& seg : segments_) sum += seg.AccelerationIntegral();
  return sum;
}

double SpeedProfile::EnergyMetric() const {
  const double T = horizon();
  return T > 0.0 ? std::sqrt(AccelerationIntegral() / T) : 0.0;
}

double SpeedProfile::MaxAbsAcceleration() const {
  double best = 0.0;
  for (const auto& seg : segments_) {
    for (int k = 0; k <= kDenseSamples; ++k) {
      const double t = seg.t_start + seg.h * k / kDenseSamples;
      best = std::max(best, std::abs(seg.Evaluate(t).a));
    }
  }
  return best;
}

double SpeedProfile::MaxJoinDiscontinuity() const {
  double worst = 0.0;
  for (size_t j = 0; j + 1 < segments_.size(); ++j) {
    const ProfileSample a = segments_[j].Evaluate(segments_[j].t_end());
    const ProfileSample b = segments_[j + 1].Evaluate(segments_[j + 1].t_start);
    worst = std::max({worst, std::abs(a.s - b.s), std::abs(a.v - b.v),
                      std::abs(a.a - b.a)});
  }
  return worst;
}

void SpeedProfile::Validate() const {
  if (segments_.empty()) throw Error(ErrorCode::kDomain, "empty speed profile");
  if (std::abs(segments_.front().t_start) > kTimeSlack) {
    throw Error(ErrorCode::kDomain, "speed profile must start at t = 0");
  }
  for (size_t j = 0; j < segments_.size(); ++j) {
    segments_[j].Validate();
    if (j > 0 &&
        std::abs(segments_[j].t_start - segments_[j - 1].t_end()) > kTimeSlack) {
      throw Error(ErrorCode::kDomain, "speed profile segments do not tile");
    }
  }
  if (MaxJoinDiscontinuity() > 1e-6) {
    throw Error(ErrorCode::kDomain, "speed profile is discontinuous at a join");
  }
  if (std::abs(Evaluate(0.0).s) > 1e-9) {
    throw Error(ErrorCode::kDomain, "speed profile must start at s = 0");
  }
  for (const auto& seg : segments_) {
    for (int k = 0; k <= kDenseSamples; ++k) {
      if (seg.Evaluate(seg.t_start + seg.h * k / kDenseSamples).v < -1e-9) {
        throw Error(ErrorCode::kDomain, "speed profile moves backward");
      }
    }
  }
}

}  // namespace intercept::speed
