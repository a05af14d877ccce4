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
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "intercept/common/error.h"
#include "speed/bezier_oracle.h"

namespace intercept::speed {
namespace {

using testing::Binomial;
using testing::MonomialDerivative;
using testing::Quadrature;
using testing::ToMonomial;

std::vector<double> RandomControl(std::mt19937_64& rng, int n, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  std::vector<double> c(n + 1);
  for (double& v : c) v = u(rng);
  return c;
}

TEST(BezierSegmentTest, ConstantCurve) {
  const BezierSegment seg{{2.0, 2.0, 2.0, 2.0, 2.0, 2.0}, 3.0, 1.0};
  for (double t : {1.0, 2.2, 4.0}) {
    const ProfileSample p = seg.Evaluate(t);
    EXPECT_DOUBLE_EQ(p.s, 6.0);
    EXPECT_DOUBLE_EQ(p.v, 0.0);
    EXPECT_DOUBLE_EQ(p.a, 0.0);
  }
}

TEST(BezierSegmentTest, LinearRampHasUnitSpeed) {
  BezierSegment seg;
  seg.h = 2.5;
  for (int i = 0; i <= 5; ++i) seg.control.push_back(i / 5.0);
  for (double t : {0.0, 0.7, 2.5}) {
    const ProfileSample p = seg.Evaluate(t);
    EXPECT_NEAR(p.s, t, 1e-15);
    EXPECT_NEAR(p.v, 1.0, 1e-14);
    EXPECT_NEAR(p.a, 0.0, 1e-13);
  }
}

TEST(BezierSegmentTest, MatchesBernsteinSumAndFiniteDifferences) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> tau(0.05, 0.95);
  for (int trial = 0; trial < 200; ++trial) {
    BezierSegment seg{RandomControl(rng, 5, 3.0), 0.5 + trial % 4, 1.5};
    for (int k = 0; k < 10; ++k) {
      const double x = tau(rng);
      double sum = 0.0;
      for (int i = 0; i <= 5; ++i) {
        sum += seg.control[i] * Binomial(5, i) * std::pow(x, i) *
               std::pow(1.0 - x, 5 - i);
      }
      const double t = seg.t_start + x * seg.h;
      const ProfileSample p = seg.Evaluate(t);
      EXPECT_NEAR(p.s, seg.h * sum, 1e-12 * (1.0 + std::abs(p.s)));
      const double e = 1e-5;
      const ProfileSample lo = seg.Evaluate(t - e);
      const ProfileSample hi = seg.Evaluate(t + e);
      EXPECT_NEAR(p.v, (hi.s - lo.s) / (2 * e), 1e-6);
      EXPECT_NEAR(p.a, (hi.v - lo.v) / (2 * e), 1e-6);
    }
  }
}

TEST(BezierTest, DerivativeRuleMatchesPowerBasis) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 4 + trial % 4;
    const std::vector<double> c = RandomControl(rng, n, 2.0);
    const std::vector<double> a = ToMonomial(c);
    const std::vector<double> d1 = DerivativeControl(c);
    const std::vector<double> d2 = DerivativeControl(d1);
    for (int k = 0; k <= 20; ++k) {
      const double x = k / 20.0;
      EXPECT_NEAR(DeCasteljau(c, x), MonomialDerivative(a, 0, x), 1e-10);
      EXPECT_NEAR(DeCasteljau(d1, x), MonomialDerivative(a, 1, x), 1e-10);
      EXPECT_NEAR(DeCasteljau(d2, x), MonomialDerivative(a, 2, x), 1e-9);
    }
  }
}

TEST(BezierTest, ConvexHullAndEndpoints) {
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> tau(0.0, 1.0);
  for (int trial = 0; trial < 10000; ++trial) {
    const std::vector<double> c = RandomControl(rng, 5, 10.0);
    const auto [lo, hi] = std::minmax_element(c.begin(), c.end());
    ASSERT_EQ(DeCasteljau(c, 0.0), c.front());
    ASSERT_EQ(DeCasteljau(c, 1.0), c.back());
    for (int k = 0; k < 10; ++k) {
      const double v = DeCasteljau(c, tau(rng));
      ASSERT_GE(v, *lo - 1e-12);
      ASSERT_LE(v, *hi + 1e-12);
    }
  }
}

TEST(BezierTest, GramMatchesQuadrature) {
  for (int m = 0; m <= 4; ++m) {
    const Eigen::MatrixXd g = BernsteinGram(m);
    for (int i = 0; i <= m; ++i) {
      for (int k = 0; k <= m; ++k) {
        const double q = Quadrature([&](double x) {
          return Bernstein(m, i, x) * Bernstein(m, k, x);
        });
        EXPECT_NEAR(g(i, k), q, 1e-14);
      }
    }
  }
}

TEST(BezierSegmentTest, AccelerationIntegralMatchesQuadrature) {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 50; ++trial) {
    const BezierSegment seg{RandomControl(rng, 5, 2.0), 0.3 + 0.4 * trial, 2.0};
    const double q = seg.h * Quadrature([&](double x) {
      const double a = seg.Evaluate(seg.t_start + x * seg.h).a;
      return a * a;
    });
    EXPECT_NEAR(seg.AccelerationIntegral(), q, 1e-10 * (1.0 + q));
  }
}

TEST(BezierSegmentTest, RejectsBadInput) {
  const BezierSegment seg{{0, 1, 2, 3, 4, 5}, 1.0, 2.0};
  EXPECT_THROW(seg.Evaluate(1.5), Error);
  EXPECT_THROW(seg.Evaluate(3.1), Error);
  EXPECT_THROW((BezierSegment{{0, 1, 2}, 1.0, 0.0}.Validate()), Error);
  EXPECT_THROW((BezierSegment{{0, 1, 2, 3, 4}, 0.0, 0.0}.Validate()), Error);
}

SpeedProfile TwoRamps() {
  // s = t on [0, 2] and [2, 5]; both segments describe the same line.
  BezierSegment a{{}, 2.0, 0.0};
  BezierSegment b{{}, 3.0, 2.0};
  for (int i = 0; i <= 5; ++i) {
    a.control.push_back(i / 5.0);
    b.control.push_back((2.0 / 3.0) + i / 5.0);
  }
  return SpeedProfile({a, b});
}

TEST(SpeedProfileTest, TilingAndJoins) {
  const SpeedProfile p = TwoRamps();
  EXPECT_NO_THROW(p.Validate());
  EXPECT_DOUBLE_EQ(p.horizon(), 5.0);
  EXPECT_NEAR(p.MaxJoinDiscontinuity(), 0.0, 1e-15);
  EXPECT_NEAR(p.Evaluate(2.0).s, 2.0, 1e-14);
  EXPECT_NEAR(p.Evaluate(4.0).s, 4.0, 1e-14);
  EXPECT_NEAR(p.Evaluate(9.0).s, 5.0, 1e-14);
  EXPECT_NEAR(p.EnergyMetric(), 0.0, 1e-12);
  const auto samples = p.Sample(0.3);
  EXPECT_DOUBLE_EQ(samples.front().t, 0.0);
  EXPECT_DOUBLE_EQ(samples.back().t, 5.0);
}

TEST(SpeedProfileTest, ValidationCatchesBrokenProfiles) {
  SpeedProfile p = TwoRamps();
  auto segs = p.segments();
  segs[1].control[0] += 0.1;
  EXPECT_THROW(SpeedProfile(segs).Validate(), Error);
  segs = p.segments();
  segs[1].t_start = 2.5;
  EXPECT_THROW(SpeedProfile(segs).Validate(), Error);
  BezierSegment back{{0.0, -0.2, -0.4, -0.6, -0.8, -1.0}, 1.0, 0.0};
  EXPECT_THROW(SpeedProfile({back}).Validate(), Error);
}

}  // namespace
}  // namespace intercept::speed
