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

#include "intercept/speed/speed_optimizer.h"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "intercept/common/error.h"

namespace intercept::speed {
namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::RowVectorXd;
using Eigen::VectorXd;

// Rows accumulate here and are packed into dense matrices at the end.
struct RowSet {
  std::vector<RowVectorXd> rows;
  std::vector<double> rhs;
  std::vector<int> owner;

  void Add(RowVectorXd row, double b, int segment) {
    rows.push_back(std::move(row));
    rhs.push_back(b);
    owner.push_back(segment);
  }

  void Pack(Index n, MatrixXd& A, VectorXd& b) const {
    A.resize(static_cast<Index>(rows.size()), n);
    b.resize(static_cast<Index>(rows.size()));
    for (size_t i = 0; i < rows.size(); ++i) {
      A.row(static_cast<Index>(i)) = rows[i];
      b(static_cast<Index>(i)) = rhs[i];
    }
  }
};

// (order - 1) x (order + 1) map from control points to the control points of
// B'' (second differences times n (n - 1)).
MatrixXd SecondDifference(int n) {
  MatrixXd d = MatrixXd::Zero(n - 1, n + 1);
  for (int i = 0; i + 2 <= n; ++i) {
    d(i, i) = 1.0;
    d(i, i + 1) = -2.0;
    d(i, i + 2) = 1.0;
  }
  return d * static_cast<double>(n * (n - 1));
}

}  // namespace

void SpeedQpConfig::Validate() const {
  if (order < 4) throw Error(ErrorCode::kValidation, "qp.order must be >= 4");
  if (!(w_acc >= 0.0) || !(w_terminal >= 0.0)) {
    throw Error(ErrorCode::kValidation, "qp.w_acc and qp.w_terminal must be >= 0");
  }
  if (!(v_min <= v_max) || !(a_min < a_max)) {
    throw Error(ErrorCode::kValidation, "qp speed or acceleration limits are empty");
  }
  if (!(lateral_accel > 0.0)) {
    throw Error(ErrorCode::kValidation, "qp.lateral_accel must be > 0");
  }
}

std::vector<double> SegmentSpeedCaps(const Corridor& corridor,
                                     const PolylinePath& path,
                                     const SpeedQpConfig& cfg) {
  std::vector<double> caps;
  for (const auto& seg : corridor.segments) {
    const double lo = std::clamp(std::min(seg.Lower(seg.t0), seg.Lower(seg.t1)),
                                 0.0, path.length());
    const double hi = std::clamp(std::max(seg.Upper(seg.t0), seg.Upper(seg.t1)),
                                 lo, path.length());
    const double kappa = path.MaxCurvature(lo, hi);
    double cap = cfg.v_max;
    if (kappa > 1e-12) cap = std::min(cap, std::sqrt(cfg.lateral_accel / kappa));
    caps.push_back(std::max(cap, cfg.v_min));
  }
  return caps;
}

SpeedQp AssembleSpeedQp(const Corridor& corridor,
                        const ReferenceProfile& reference,
                        const PolylinePath& path, const InitialState& init,
                        const SpeedQpConfig& cfg) {
  cfg.Validate();
  const auto& segs = corridor.segments;
  if (segs.empty()) throw Error(ErrorCode::kAssembly, "no corridor segments");
  if (reference.stations.empty()) {
    throw Error(ErrorCode::kAssembly, "empty reference profile");
  }
  for (size_t j = 0; j < segs.size(); ++j) {
    if (!(segs[j].duration() > 0.0)) {
      throw Error(ErrorCode::kAssembly, "corridor segment has no duration");
    }
    if (j > 0 && std::abs(segs[j].t0 - segs[j - 1].t1) > 1e-9) {
      throw Error(ErrorCode::kAssembly, "corridor segments do not tile");
    }
  }
  const std::vector<double> caps = SegmentSpeedCaps(corridor, path, cfg);
  if (init.v0 < cfg.v_min - 1e-9 || init.v0 > caps.front() + 1e-9) {
    throw Error(ErrorCode::kAssembly, "initial speed outside the speed limits");
  }
  if (init.a0 < cfg.a_min - 1e-9 || init.a0 > cfg.a_max + 1e-9) {
    throw Error(ErrorCode::kAssembly,
                "initial acceleration outside the acceleration limits");
  }

  const int n = cfg.order;
  const Index width = n + 1;
  const Index m = static_cast<Index>(segs.size());
  const Index nv = m * width;
  const double s_ref = reference.stations.back();
  const MatrixXd d2 = SecondDifference(n);
  const MatrixXd gram = BernsteinGram(n - 2);
  const MatrixXd acc_form = d2.transpose() * gram * d2;
  const auto col = [&](Index j, Index i) { return j * width + i; };

  SpeedQp out;
  QPProblem& qp = out.problem;
  qp.Q = MatrixXd::Zero(nv, nv);
  qp.q = VectorXd::Zero(nv);
  for (Index j = 0; j < m; ++j) {
    const double h = segs[j].duration();
    qp.Q.block(j * width, j * width, width, width) += 2.0 * cfg.w_acc / h * acc_form;
  }
  const double h_last = segs.back().duration();
  const Index last = col(m - 1, n);
  qp.Q(last, last) += 2.0 * cfg.w_terminal * h_last * h_last;
  qp.q(last) += -2.0 * cfg.w_terminal * h_last * s_ref;
  out.objective_constant = cfg.w_terminal * s_ref * s_ref;

  const auto zero = [&] { return RowVectorXd::Zero(nv); };
  const double dn = static_cast<double>(n);
  const double dnn = dn * (dn - 1.0);

  RowSet eq;
  {
    const double h0 = segs.front().duration();
    RowVectorXd r = zero();
    r(col(0, 0)) = 1.0;
    eq.Add(r, 0.0, 0);
    r = zero();
    r(col(0, 0)) = -dn;
    r(col(0, 1)) = dn;
    eq.Add(r, init.v0, 0);
    r = zero();
    r(col(0, 0)) = dnn / h0;
    r(col(0, 1)) = -2.0 * dnn / h0;
    r(col(0, 2)) = dnn / h0;
    eq.Add(r, init.a0, 0);
  }
  for (Index j = 0; j + 1 < m; ++j) {
    const double ha = segs[j].duration();
    const double hb = segs[j + 1].duration();
    const int owner = static_cast<int>(j + 1);
    RowVectorXd r = zero();
    r(col(j, n)) = ha;
    r(col(j + 1, 0)) = -hb;
    eq.Add(r, 0.0, owner);
    r = zero();
    r(col(j, n)) = dn;
    r(col(j, n - 1)) = -dn;
    r(col(j + 1, 1)) = -dn;
    r(col(j + 1, 0)) = dn;
    eq.Add(r, 0.0, owner);
    r = zero();
    r(col(j, n)) = dnn / ha;
    r(col(j, n - 1)) = -2.0 * dnn / ha;
    r(col(j, n - 2)) = dnn / ha;
    r(col(j + 1, 0)) = -dnn / hb;
    r(col(j + 1, 1)) = 2.0 * dnn / hb;
    r(col(j + 1, 2)) = -dnn / hb;
    eq.Add(r, 0.0, owner);
  }
  const int last_owner = static_cast<int>(m - 1);
  if (cfg.hard_terminal) {
    RowVectorXd r = zero();
    r(last) = h_last;
    eq.Add(r, s_ref, last_owner);
  }
  if (cfg.terminal_speed) {
    RowVectorXd r = zero();
    r(col(m - 1, n)) = dn;
    r(col(m - 1, n - 1)) = -dn;
    eq.Add(r, *cfg.terminal_speed, last_owner);
  }
  if (cfg.terminal_accel) {
    RowVectorXd r = zero();
    r(col(m - 1, n)) = dnn / h_last;
    r(col(m - 1, n - 1)) = -2.0 * dnn / h_last;
    r(col(m - 1, n - 2)) = dnn / h_last;
    eq.Add(r, *cfg.terminal_accel, last_owner);
  }

  RowSet iq;
  for (Index j = 0; j < m; ++j) {
    const auto& seg = segs[j];
    const double h = seg.duration();
    const int owner = static_cast<int>(j);
    for (int i = 0; i <= n; ++i) {
      const double t = seg.t0 + h * i / dn;
      RowVectorXd r = zero();
      r(col(j, i)) = h;
      iq.Add(r, seg.Upper(t), owner);
      iq.Add(-r, -seg.Lower(t), owner);
    }
    for (int i = 0; i < n; ++i) {
      RowVectorXd r = zero();
      r(col(j, i + 1)) = dn;
      r(col(j, i)) = -dn;
      iq.Add(r, caps[j], owner);
      iq.Add(-r, -cfg.v_min, owner);
    }
    for (int i = 0; i + 2 <= n; ++i) {
      RowVectorXd r = zero();
      r(col(j, i)) = dnn / h;
      r(col(j, i + 1)) = -2.0 * dnn / h;
      r(col(j, i + 2)) = dnn / h;
      iq.Add(r, cfg.a_max, owner);
      iq.Add(-r, -cfg.a_min, owner);
    }
  }
  eq.Pack(nv, qp.A_eq, qp.b_eq);
  iq.Pack(nv, qp.A_iq, qp.b_iq);
  out.eq_segment = eq.owner;
  out.iq_segment = iq.owner;
  qp.Validate();
  return out;
}

SpeedResult OptimizeSpeed(const Corridor& corridor,
                          const ReferenceProfile& reference,
                          const PolylinePath& path, const InitialState& init,
                          const SpeedQpConfig& cfg) {
  const SpeedQp qp = AssembleSpeedQp(corridor, reference, path, init, cfg);
  SpeedResult out;
  out.qp = SolveQp(qp.problem, cfg.qp);
  switch (out.qp.status) {
    case QpStatus::kSolved:
      break;
    case QpStatus::kMaxIterations:
      throw Error(ErrorCode::kMaxIterations,
                  "speed QP hit the iteration cap after " +
                      std::to_string(out.qp.iterations) + " iterations");
    case QpStatus::kPrimalInfeasible:
    case QpStatus::kDualInfeasible: {
      std::vector<double> weight(corridor.segments.size(), 0.0);
      const auto& cert = out.qp.certificate;
      const size_t meq = qp.eq_segment.size();
      for (Eigen::Index i = 0; i < cert.size(); ++i) {
        const size_t row = static_cast<size_t>(i);
        const int seg = row < meq ? qp.eq_segment[row] : qp.iq_segment[row - meq];
        weight[seg] += std::abs(cert(i));
      }
      const auto worst = static_cast<size_t>(
          std::max_element(weight.begin(), weight.end()) - weight.begin());
      const auto& seg = corridor.segments[worst];
      throw Error(ErrorCode::kInfeasible,
                  "speed QP infeasible in corridor segment " +
                      std::to_string(worst) + " [" + std::to_string(seg.t0) +
                      ", " + std::to_string(seg.t1) + "] s");
    }
  }
  const int width = cfg.order + 1;
  std::vector<BezierSegment> segments;
  for (size_t j = 0; j < corridor.segments.size(); ++j) {
    BezierSegment seg;
    seg.h = corridor.segments[j].duration();
    seg.t_start = corridor.segments[j].t0;
    seg.control.assign(out.qp.x.data() + j * width,
                       out.qp.x.data() + (j + 1) * width);
    segments.push_back(std::move(seg));
  }
  out.profile = SpeedProfile(std::move(segments));
  out.profile.Validate();
  out.cost = out.qp.objective + qp.objective_constant;
  return out;
}

double SpeedCost(const SpeedProfile& profile, double s_ref,
                 const SpeedQpConfig& cfg) {
  const double miss = profile.Evaluate(profile.horizon()).s - s_ref;
  return cfg.w_acc * profile.AccelerationIntegral() +
         cfg.w_terminal * miss * miss;
}

double PolylineAccelerationIntegral(const std::vector<double>& stations,
                                    double dt, double v0) {
  if (stations.size() < 2 || !(dt > 0.0)) {
    throw Error(ErrorCode::kDomain, "station polyline needs two samples");
  }
  double sum = 0.0;
  double v_prev = v0;
  for (size_t k = 0; k + 1 < stations.size(); ++k) {
    const double v = (stations[k + 1] - stations[k]) / dt;
    const double a = (v - v_prev) / dt;
    sum += a * a * dt;
    v_prev = v;
  }
  return sum;
}

double PolylineEnergyMetric(const std::vector<double>& stations, double dt,
                            double v0) {
  const double T = dt * static_cast<double>(stations.size() - 1);
  return std::sqrt(PolylineAccelerationIntegral(stations, dt, v0) / T);
}

double PolylineCost(const std::vector<double>& stations, double dt, double v0,
                    double s_ref, const SpeedQpConfig& cfg) {
  const double miss = stations.back() - s_ref;
  return cfg.w_acc * PolylineAccelerationIntegral(stations, dt, v0) +
         cfg.w_terminal * miss * miss;
}

SpeedProfile UniformProfile(double horizon, double s_ref, int order) {
  if (!(horizon > 0.0)) throw Error(ErrorCode::kDomain, "horizon must be > 0");
  BezierSegment seg;
  seg.h = horizon;
  seg.control.resize(order + 1);
  for (int i = 0; i <= order; ++i) {
    seg.control[i] = s_ref * i / (static_cast<double>(order) * horizon);
  }
  seg.Validate();
  return SpeedProfile({seg});
}

}  // namespace intercept::speed
