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
 * @file qp_solver.h
 * @brief Dense convex QP solver based on the alternating direction method of
 * multipliers, in the operator-splitting form used by OSQP.
 *
 *   minimize    1/2 x' Q x + q' x
 *   subject to  A_eq x = b_eq,  A_iq x <= b_iq
 *
 * Ruiz equilibration is optional (scaling_iters), the step parameter rho
 * adapts to the residual balance, and a settled iterate is polished by
 * solving the equality-constrained problem on its active set. Constraint
 * matrices are used in sparse form.
 **/

#pragma once

#include <string_view>

#include <Eigen/Core>

namespace intercept::speed {

struct QPProblem {
  Eigen::MatrixXd Q;
  Eigen::VectorXd q;
  Eigen::MatrixXd A_eq;
  Eigen::VectorXd b_eq;
  Eigen::MatrixXd A_iq;
  Eigen::VectorXd b_iq;

  Eigen::Index num_vars() const { return q.size(); }
  /// Throws Error(kAssembly) on inconsistent shapes or asymmetric Q.
  void Validate() const;
  double Objective(const Eigen::VectorXd& x) const {
    return 0.5 * x.dot(Q * x) + q.dot(x);
  }
};

struct QpSettings {
  double tol = 1e-6;
  int max_iters = 20000;
  double rho = 0.1;
  double sigma = 1e-6;
  double alpha = 1.6;
  int scaling_iters = 0;  // Ruiz passes; 0 leaves the problem as given
  int check_every = 25;
  bool polish = true;
};

enum class QpStatus { kSolved, kPrimalInfeasible, kDualInfeasible, kMaxIterations };

std::string_view QpStatusName(QpStatus status);

struct QpResult {
  QpStatus status = QpStatus::kMaxIterations;
  Eigen::VectorXd x;
  Eigen::VectorXd y_eq;  // multipliers, stationarity Qx + q + A'y = 0
  Eigen::VectorXd y_iq;  // >= 0 at the solution
  int iterations = 0;
  bool polished = false;
  double objective = 0.0;
  double eq_residual = 0.0;      // ||A_eq x - b_eq||_inf
  double iq_violation = 0.0;     // max(0, A_iq x - b_iq)
  double stationarity = 0.0;     // ||Q x + q + A' y||_inf
  /// For kPrimalInfeasible: certificate rows (eq rows first, then iq rows).
  Eigen::VectorXd certificate;
};

QpResult SolveQp(const QPProblem& problem, const QpSettings& settings = {});

}  // namespace intercept::speed
