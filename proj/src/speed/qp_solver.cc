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

#include "intercept/speed/qp_solver.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "intercept/common/error.h"

namespace intercept::speed {
namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;
using SpMat = Eigen::SparseMatrix<double>;

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kInfeasTol = 1e-5;
constexpr double kPolishDelta = 1e-7;
constexpr int kPolishRefine = 10;
constexpr int kPolishRounds = 25;
constexpr double kPolishGate = 1e-1;
constexpr double kPolishRetry = 0.2;

double InfNorm(const VectorXd& v) {
  return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

double ClampNorm(double v) { return std::clamp(v, 1e-4, 1e4); }

struct Scaled {
  MatrixXd P;
  VectorXd q;
  MatrixXd A;
  VectorXd l;
  VectorXd u;
  VectorXd D;  // x = D .* x_hat
  VectorXd E;  // z_hat = E .* z
  double c = 1.0;
  SpMat P_sp;
  SpMat A_sp;
};

Scaled Equilibrate(const QPProblem& p, const MatrixXd& A, const VectorXd& l,
                   const VectorXd& u, int iters) {
  Scaled s;
  s.P = p.Q;
  s.q = p.q;
  s.A = A;
  const Index n = p.num_vars();
  const Index m = A.rows();
  s.D = VectorXd::Ones(n);
  s.E = VectorXd::Ones(m);
  for (int k = 0; k < iters; ++k) {
    VectorXd dd(n);
    for (Index j = 0; j < n; ++j) {
      double norm = s.P.col(j).cwiseAbs().maxCoeff();
      if (m > 0) norm = std::max(norm, s.A.col(j).cwiseAbs().maxCoeff());
      dd(j) = norm < 1e-4 ? 1.0 : 1.0 / std::sqrt(ClampNorm(norm));
    }
    VectorXd de(m);
    for (Index i = 0; i < m; ++i) {
      const double norm = s.A.row(i).cwiseAbs().maxCoeff();
      de(i) = norm < 1e-4 ? 1.0 : 1.0 / std::sqrt(ClampNorm(norm));
    }
    s.P = dd.asDiagonal() * s.P * dd.asDiagonal();
    s.q = dd.cwiseProduct(s.q);
    s.A = de.asDiagonal() * s.A * dd.asDiagonal();
    s.D = s.D.cwiseProduct(dd);
    s.E = s.E.cwiseProduct(de);
    double mean_col = 0.0;
    for (Index j = 0; j < n; ++j) mean_col += s.P.col(j).cwiseAbs().maxCoeff();
    mean_col /= std::max<Index>(n, 1);
    const double scale = std::max(mean_col, InfNorm(s.q));
    const double gamma = scale < 1e-4 ? 1.0 : 1.0 / ClampNorm(scale);
    s.P *= gamma;
    s.q *= gamma;
    s.c *= gamma;
  }
  s.l = s.E.cwiseProduct(l);
  s.u = s.E.cwiseProduct(u);
  s.P_sp = s.P.sparseView();
  s.A_sp = s.A.sparseView();
  return s;
}

struct Residuals {
  double eq = 0.0;
  double iq = 0.0;
  double stationarity = 0.0;
  double dual_sign = 0.0;  // most negative inequality multiplier, as a positive
};

Residuals Evaluate(const QPProblem& p, const VectorXd& x, const VectorXd& y_eq,
                   const VectorXd& y_iq) {
  Residuals r;
  if (p.A_eq.rows() > 0) r.eq = InfNorm(p.A_eq * x - p.b_eq);
  if (p.A_iq.rows() > 0) {
    r.iq = std::max(0.0, (p.A_iq * x - p.b_iq).maxCoeff());
    r.dual_sign = std::max(0.0, -y_iq.minCoeff());
  }
  VectorXd grad = p.Q * x + p.q;
  if (p.A_eq.rows() > 0) grad += p.A_eq.transpose() * y_eq;
  if (p.A_iq.rows() > 0) grad += p.A_iq.transpose() * y_iq;
  r.stationarity = InfNorm(grad);
  return r;
}

struct Sparse {
  SpMat Q;
  SpMat A_eq;
  SpMat A_iq;
};

struct WorkingSetSolution {
  VectorXd x;
  VectorXd y;  // eq rows first, then every iq row (zero when inactive)
  std::vector<Index> broken;  // active iq rows the system could not satisfy
};

// Solves the equality-constrained problem on one working set. The KKT
// system is regularized to quasi-definite form and factored sparsely;
// iterative refinement then targets the exact system. When the working set
// is inconsistent the refined iterate is a regularized compromise, and the
// active rows it leaves unsatisfied are reported as broken.
std::optional<WorkingSetSolution> SolveWorkingSet(
    const QPProblem& p, const Sparse& sp, const std::vector<bool>& active,
    double tol) {
  const Index n = p.num_vars();
  const Index meq = p.A_eq.rows();
  const Index miq = p.A_iq.rows();
  std::vector<Index> rows;
  for (Index i = 0; i < miq; ++i) {
    if (active[i]) rows.push_back(i);
  }
  const Index k = meq + static_cast<Index>(rows.size());
  std::vector<Eigen::Triplet<double>> exact;
  exact.reserve(sp.Q.nonZeros() + 2 * (sp.A_eq.nonZeros() + sp.A_iq.nonZeros()));
  for (Index j = 0; j < n; ++j) {
    for (SpMat::InnerIterator it(sp.Q, j); it; ++it) {
      exact.emplace_back(it.row(), j, it.value());
    }
  }
  // Column `src` of a transposed constraint matrix is constraint row `src`.
  const auto add_row = [&](const SpMat& At, Index src, Index dst) {
    for (SpMat::InnerIterator it(At, src); it; ++it) {
      exact.emplace_back(dst, it.row(), it.value());
      exact.emplace_back(it.row(), dst, it.value());
    }
  };
  const SpMat eq_t = sp.A_eq.transpose();
  const SpMat iq_t = sp.A_iq.transpose();
  VectorXd rhs = VectorXd::Zero(n + k);
  rhs.head(n) = -p.q;
  for (Index i = 0; i < meq; ++i) {
    add_row(eq_t, i, n + i);
    rhs(n + i) = p.b_eq(i);
  }
  for (size_t a = 0; a < rows.size(); ++a) {
    const Index r = n + meq + static_cast<Index>(a);
    add_row(iq_t, rows[a], r);
    rhs(r) = p.b_iq(rows[a]);
  }
  SpMat kkt(n + k, n + k);
  kkt.setFromTriplets(exact.begin(), exact.end());
  SpMat kkt_reg = kkt;
  for (Index i = 0; i < n + k; ++i) {
    kkt_reg.coeffRef(i, i) += i < n ? kPolishDelta : -kPolishDelta;
  }

  const Eigen::SimplicialLDLT<SpMat> ldlt(kkt_reg);
  if (ldlt.info() != Eigen::Success) return std::nullopt;
  const double target = 1e-12 * std::max(1.0, InfNorm(rhs));
  VectorXd sol = ldlt.solve(rhs);
  VectorXd res = rhs - kkt * sol;
  for (int it = 0; it < kPolishRefine && InfNorm(res) > target; ++it) {
    sol += ldlt.solve(res);
    res = rhs - kkt * sol;
  }
  if (!sol.allFinite()) return std::nullopt;

  WorkingSetSolution out;
  out.x = sol.head(n);
  out.y = VectorXd::Zero(meq + miq);
  out.y.head(meq) = sol.segment(n, meq);
  for (size_t a = 0; a < rows.size(); ++a) {
    const Index r = n + meq + static_cast<Index>(a);
    out.y(meq + rows[a]) = sol(r);
    if (std::abs(res(r)) > tol) out.broken.push_back(rows[a]);
  }
  return out;
}

// Guesses the active set from the ADMM iterate, then repairs it: rows of an
// inconsistent working set are dropped, otherwise the most negative
// multiplier leaves and the most violated row joins.
std::optional<std::pair<VectorXd, VectorXd>> Polish(const QPProblem& p,
                                                    const Sparse& sp,
                                                    const VectorXd& z,
                                                    const VectorXd& y,
                                                    double tol) {
  const Index meq = p.A_eq.rows();
  const Index miq = p.A_iq.rows();
  std::vector<bool> active(miq);
  for (Index i = 0; i < miq; ++i) {
    active[i] = p.b_iq(i) - z(meq + i) < y(meq + i);
  }
  for (int round = 0; round < kPolishRounds; ++round) {
    auto sol = SolveWorkingSet(p, sp, active, tol);
    if (!sol) return std::nullopt;
    if (!sol->broken.empty()) {
      for (Index i : sol->broken) active[i] = false;
      continue;
    }
    const VectorXd slack =
        miq > 0 ? VectorXd(sp.A_iq * sol->x - p.b_iq) : VectorXd();
    Index worst_dual = -1;
    double dual = -tol;
    Index worst_primal = -1;
    double primal = tol;
    for (Index i = 0; i < miq; ++i) {
      if (active[i] && sol->y(meq + i) < dual) {
        dual = sol->y(meq + i);
        worst_dual = i;
      }
      if (!active[i] && slack(i) > primal) {
        primal = slack(i);
        worst_primal = i;
      }
    }
    if (worst_dual < 0 && worst_primal < 0) {
      return std::make_pair(std::move(sol->x), std::move(sol->y));
    }
    if (worst_primal >= 0) active[worst_primal] = true;
    if (worst_dual >= 0) active[worst_dual] = false;
  }
  return std::nullopt;
}

}  // namespace

std::string_view QpStatusName(QpStatus status) {
  switch (status) {
    case QpStatus::kSolved: return "solved";
    case QpStatus::kPrimalInfeasible: return "primal_infeasible";
    case QpStatus::kDualInfeasible: return "dual_infeasible";
    case QpStatus::kMaxIterations: return "max_iterations";
  }
  return "unknown";
}

void QPProblem::Validate() const {
  const Index n = q.size();
  const bool ok = Q.rows() == n && Q.cols() == n &&
                  (A_eq.rows() == 0 || A_eq.cols() == n) &&
                  A_eq.rows() == b_eq.size() &&
                  (A_iq.rows() == 0 || A_iq.cols() == n) &&
                  A_iq.rows() == b_iq.size();
  if (!ok) throw Error(ErrorCode::kAssembly, "QP dimensions are inconsistent");
  if (n > 0 && (Q - Q.transpose()).cwiseAbs().maxCoeff() >
                   1e-12 * std::max(1.0, Q.cwiseAbs().maxCoeff())) {
    throw Error(ErrorCode::kAssembly, "QP cost matrix is not symmetric");
  }
}

QpResult SolveQp(const QPProblem& problem, const QpSettings& settings) {
  problem.Validate();
  const Index n = problem.num_vars();
  const Index meq = problem.A_eq.rows();
  const Index miq = problem.A_iq.rows();
  const Index m = meq + miq;

  MatrixXd A(m, n);
  VectorXd l(m);
  VectorXd u(m);
  if (meq > 0) {
    A.topRows(meq) = problem.A_eq;
    l.head(meq) = problem.b_eq;
    u.head(meq) = problem.b_eq;
  }
  if (miq > 0) {
    A.bottomRows(miq) = problem.A_iq;
    l.tail(miq).setConstant(-kInf);
    u.tail(miq) = problem.b_iq;
  }
  const Scaled s = Equilibrate(problem, A, l, u, settings.scaling_iters);
  const SpMat A_sp = A.sparseView();
  const SpMat Q_sp = problem.Q.sparseView();
  const Sparse sp{Q_sp, problem.A_eq.sparseView(), problem.A_iq.sparseView()};

  QpResult result;
  const auto finish = [&](const VectorXd& x, const VectorXd& y_full) {
    result.x = x;
    result.y_eq = y_full.head(meq);
    result.y_iq = y_full.tail(miq);
    const Residuals r = Evaluate(problem, x, result.y_eq, result.y_iq);
    result.objective = problem.Objective(x);
    result.eq_residual = r.eq;
    result.iq_violation = r.iq;
    result.stationarity = r.stationarity;
  };
  const auto try_polish = [&](const VectorXd& z_u, const VectorXd& y_u) {
    if (!settings.polish) return false;
    const auto pol = Polish(problem, sp, z_u, y_u, settings.tol);
    if (!pol) return false;
    const Residuals r = Evaluate(problem, pol->first, pol->second.head(meq),
                                 pol->second.tail(miq));
    const double tol = settings.tol;
    if (r.eq > tol || r.iq > tol || r.dual_sign > tol || r.stationarity > tol) {
      return false;
    }
    finish(pol->first, pol->second);
    result.polished = true;
    result.status = QpStatus::kSolved;
    return true;
  };

  VectorXd rho_vec(m);
  double rho = settings.rho;
  const auto set_rho = [&](double r) {
    for (Index i = 0; i < m; ++i) rho_vec(i) = (l(i) == u(i)) ? 1e3 * r : r;
  };
  set_rho(rho);
  SpMat sigma_eye(n, n);
  sigma_eye.setIdentity();
  sigma_eye *= settings.sigma;
  Eigen::SimplicialLDLT<SpMat> ldlt;
  const auto factor = [&]() {
    SpMat K = s.P_sp + sigma_eye;
    if (m > 0) {
      K += SpMat(s.A_sp.transpose() * rho_vec.asDiagonal() * s.A_sp);
    }
    ldlt.compute(K);
  };
  factor();

  VectorXd x = VectorXd::Zero(n);
  VectorXd z = VectorXd::Zero(m);
  VectorXd y = VectorXd::Zero(m);
  const double tol = settings.tol;
  double last_polish = kInf;

  for (int it = 1; it <= settings.max_iters; ++it) {
    const VectorXd rhs = settings.sigma * x - s.q +
                         (m > 0 ? VectorXd(s.A_sp.transpose() *
                                           (rho_vec.cwiseProduct(z) - y))
                                : VectorXd::Zero(n));
    const VectorXd x_tilde = ldlt.solve(rhs);
    const VectorXd z_tilde = s.A_sp * x_tilde;
    const VectorXd x_new = settings.alpha * x_tilde + (1.0 - settings.alpha) * x;
    const VectorXd z_relax = settings.alpha * z_tilde + (1.0 - settings.alpha) * z;
    VectorXd z_new = z_relax + y.cwiseQuotient(rho_vec);
    z_new = z_new.cwiseMax(s.l).cwiseMin(s.u);
    const VectorXd y_new = y + rho_vec.cwiseProduct(z_relax - z_new);
    const VectorXd dx = x_new - x;
    const VectorXd dy = y_new - y;
    x = x_new;
    z = z_new;
    y = y_new;
    result.iterations = it;

    if (it % settings.check_every != 0 && it != settings.max_iters) continue;

    // Unscaled iterates and residuals.
    const VectorXd x_u = s.D.cwiseProduct(x);
    const VectorXd z_u = z.cwiseQuotient(s.E);
    const VectorXd y_u = s.E.cwiseProduct(y) / s.c;
    const VectorXd ax = A_sp * x_u;
    const double r_prim = m > 0 ? InfNorm(ax - z_u) : 0.0;
    const VectorXd px = Q_sp * x_u;
    const VectorXd aty = m > 0 ? VectorXd(A_sp.transpose() * y_u) : VectorXd::Zero(n);
    const double r_dual = InfNorm(px + problem.q + aty);
    // Absolute tolerances: the residual bounds are the contract.
    const double eps_prim = tol;
    const double eps_dual = tol;

    // Polish once the iterate is roughly settled, and again only after the
    // residuals have shrunk well below the last failed attempt.
    const double settle = std::max(r_prim / (1.0 + InfNorm(z_u)),
                                   r_dual / (1.0 + InfNorm(problem.q)));
    if (settle < kPolishGate && settle < kPolishRetry * last_polish) {
      last_polish = settle;
      if (try_polish(z_u, y_u)) return result;
    }
    if (r_prim < eps_prim && r_dual < eps_dual) {
      finish(x_u, y_u);
      result.status = QpStatus::kSolved;
      return result;
    }

    // Primal infeasibility certificate.
    const VectorXd dy_u = s.E.cwiseProduct(dy);
    const double ndy = InfNorm(dy_u);
    if (m > 0 && ndy > 1e-12) {
      const double at_dy = InfNorm(A_sp.transpose() * dy_u);
      double support = 0.0;
      bool valid = true;
      for (Index i = 0; i < m; ++i) {
        if (dy_u(i) > 0.0) {
          if (std::isinf(u(i))) valid = valid && dy_u(i) <= kInfeasTol * ndy;
          else support += u(i) * dy_u(i);
        } else if (dy_u(i) < 0.0) {
          if (std::isinf(l(i))) valid = valid && -dy_u(i) <= kInfeasTol * ndy;
          else support += l(i) * dy_u(i);
        }
      }
      if (valid && at_dy <= kInfeasTol * ndy && support < -kInfeasTol * ndy) {
        finish(x_u, y_u);
        result.status = QpStatus::kPrimalInfeasible;
        result.certificate = dy_u / ndy;
        return result;
      }
    }
    // Dual infeasibility certificate.
    const VectorXd dx_u = s.D.cwiseProduct(dx);
    const double ndx = InfNorm(dx_u);
    if (ndx > 1e-12) {
      bool cert = InfNorm(Q_sp * dx_u) <= kInfeasTol * ndx &&
                  problem.q.dot(dx_u) < -kInfeasTol * ndx;
      const VectorXd adx = A_sp * dx_u;
      for (Index i = 0; i < m && cert; ++i) {
        if (!std::isinf(u(i))) cert = adx(i) <= kInfeasTol * ndx;
        if (cert && !std::isinf(l(i))) cert = adx(i) >= -kInfeasTol * ndx;
      }
      if (cert) {
        finish(x_u, y_u);
        result.status = QpStatus::kDualInfeasible;
        return result;
      }
    }

    // Rebalance rho on the unscaled residuals.
    const double prim_scale = std::max(InfNorm(ax), InfNorm(z_u)) + 1e-12;
    const double dual_scale =
        std::max({InfNorm(px), InfNorm(aty), InfNorm(problem.q)}) + 1e-12;
    const double rp = r_prim / prim_scale;
    const double rd = r_dual / dual_scale;
    if (rp > 0.0 && rd > 0.0) {
      const double new_rho = std::clamp(rho * std::sqrt(rp / rd), 1e-6, 1e6);
      if (new_rho > 5.0 * rho || new_rho < 0.2 * rho) {
        rho = new_rho;
        set_rho(rho);
        factor();
      }
    }
  }

  const VectorXd x_u = s.D.cwiseProduct(x);
  const VectorXd z_u = z.cwiseQuotient(s.E);
  const VectorXd y_u = s.E.cwiseProduct(y) / s.c;
  if (try_polish(z_u, y_u)) return result;
  finish(x_u, y_u);
  result.status = QpStatus::kMaxIterations;
  return result;
}

}  // namespace intercept::speed
