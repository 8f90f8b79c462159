// Copyright 2026 The mlprior Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mlprior/sdp.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "mlprior/errors.h"

namespace mlprior {

SdpInstance BuildSdpInstance(const QboProblem& problem) {
  const int v = problem.size();
  const int n = v + 1;
  SdpInstance inst;
  inst.cost = Eigen::MatrixXd::Zero(n, n);
  inst.cost.topLeftCorner(v, v) = -problem.A();
  inst.cost.col(v).head(v) = 0.5 * problem.b();
  inst.cost.row(v).head(v) = 0.5 * problem.b().transpose();
  if (const auto& c = problem.constraint()) {
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(n, n);
    G.col(v).head(v) = 0.5 * c->alpha;
    G.row(v).head(v) = 0.5 * c->alpha.transpose();
    inst.constraint_matrix = std::move(G);
    inst.beta = c->beta;
  }
  return inst;
}

double CertifiedSdpBound(const SdpInstance& instance,
                         const Eigen::VectorXd& diag_multipliers,
                         double affine_multiplier) {
  const int n = instance.dim();
  Eigen::MatrixXd Z = -instance.cost;
  Z.diagonal() += diag_multipliers;
  if (instance.constraint_matrix) {
    Z += affine_multiplier * *instance.constraint_matrix;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(Z, Eigen::EigenvaluesOnly);
  const double lambda_min = eig.eigenvalues()[0];
  // Covers the eigensolver's backward error.
  const double margin = 1e-13 * (Z.norm() + 1.0);
  const double shift = std::max(0.0, -lambda_min) + margin;
  double bound = diag_multipliers.sum() + n * shift;
  if (instance.constraint_matrix) bound += affine_multiplier * instance.beta;
  return bound;
}

namespace internal {

void SplitLiftedMatrix(const Eigen::MatrixXd& M, SdpSolution* solution) {
  const Eigen::Index n = M.rows();
  Eigen::VectorXd inv_sqrt(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    inv_sqrt[i] = M(i, i) > 1e-12 ? 1.0 / std::sqrt(M(i, i)) : 0.0;
  }
  Eigen::MatrixXd normalized = inv_sqrt.asDiagonal() * M * inv_sqrt.asDiagonal();
  for (Eigen::Index i = 0; i < n; ++i) normalized(i, i) = 1.0;
  normalized = 0.5 * (normalized + normalized.transpose()).eval();
  const Eigen::Index v = n - 1;
  solution->u = normalized.col(v).head(v);
  solution->U = normalized.topLeftCorner(v, v);
}

SdpSolution SolveSdpDualAdmm(const SdpInstance& instance, const SdpConfig& config) {
  const int n = instance.dim();
  const bool constrained = instance.constraint_matrix.has_value();
  const double scale = std::max(1.0, instance.cost.norm());
  // Standard form: min <Cp, X>  s.t.  diag(X) = 1, <G, X> = beta, X >= 0.
  const Eigen::MatrixXd Cp = -instance.cost / scale;
  const Eigen::MatrixXd G =
      constrained ? *instance.constraint_matrix : Eigen::MatrixXd::Zero(n, n);
  const double g_norm2 = G.squaredNorm();
  if (constrained && g_norm2 == 0.0) {
    throw InvalidArgument("affine constraint with alpha = 0");
  }
  const double beta = instance.beta;
  const double cp_norm = Cp.norm();
  const double r_norm = std::sqrt(n + (constrained ? beta * beta : 0.0));

  Eigen::MatrixXd X = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd S = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd y_diag = Eigen::VectorXd::Zero(n);
  double y_aff = 0.0;
  double mu = 1.0;

  SdpSolution sol;
  sol.backend = SdpBackend::kDualAdmm;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(n);
  int it = 0;
  for (; it < config.max_iterations; ++it) {
    const Eigen::MatrixXd SmC = S - Cp;
    y_diag = -(mu * (X.diagonal().array() - 1.0).matrix() + SmC.diagonal());
    if (constrained) {
      const double gx = (G.array() * X.array()).sum();
      y_aff = -(mu * (gx - beta) + (G.array() * SmC.array()).sum()) / g_norm2;
    }
    Eigen::MatrixXd Vm = Cp - mu * X;
    Vm.diagonal() -= y_diag;
    if (constrained) Vm -= y_aff * G;

    eig.compute(Vm);
    const Eigen::VectorXd& lam = eig.eigenvalues();
    const Eigen::MatrixXd& Q = eig.eigenvectors();
    const Eigen::VectorXd pos = lam.cwiseMax(0.0);
    const Eigen::VectorXd neg = (-lam).cwiseMax(0.0);
    S = Q * pos.asDiagonal() * Q.transpose();
    X = Q * (neg / mu).asDiagonal() * Q.transpose();

    if (it % 5 != 4 && it + 1 != config.max_iterations) continue;

    double p_res2 = (X.diagonal().array() - 1.0).matrix().squaredNorm();
    const double gx = constrained ? (G.array() * X.array()).sum() : 0.0;
    if (constrained) p_res2 += (gx - beta) * (gx - beta);
    Eigen::MatrixXd dual_res = Cp - S;
    dual_res.diagonal() -= y_diag;
    if (constrained) dual_res -= y_aff * G;
    const double p_inf = std::sqrt(p_res2) / (1.0 + r_norm);
    const double d_inf = dual_res.norm() / (1.0 + cp_norm);
    const double p_obj = (Cp.array() * X.array()).sum();
    const double d_obj = y_diag.sum() + (constrained ? beta * y_aff : 0.0);
    const double gap = std::abs(p_obj - d_obj) / (1.0 + std::abs(p_obj) + std::abs(d_obj));
    sol.residuals = {p_inf, d_inf, gap, it + 1, false};
    if (std::max({p_inf, d_inf, gap}) <= config.tolerance) {
      sol.residuals.converged = true;
      break;
    }
    if (it % 20 == 19) {
      if (p_inf > 5.0 * d_inf) {
        mu = std::min(mu * 1.6, 1e6);
      } else if (d_inf > 5.0 * p_inf) {
        mu = std::max(mu / 1.6, 1e-6);
      }
    }
  }
  SplitLiftedMatrix(X, &sol);
  Eigen::MatrixXd M(n, n);
  M.topLeftCorner(n - 1, n - 1) = sol.U;
  M.col(n - 1).head(n - 1) = sol.u;
  M.row(n - 1).head(n - 1) = sol.u.transpose();
  M(n - 1, n - 1) = 1.0;
  sol.primal_value = (instance.cost.array() * M.array()).sum();
  sol.value = CertifiedSdpBound(instance, -scale * y_diag, -scale * y_aff);
  return sol;
}

}  // namespace internal

SdpSolution SolveSdp(const QboProblem& problem, const SdpConfig& config) {
  if (!(config.tolerance > 0.0) || config.max_iterations <= 0) {
    throw InvalidArgument("SDP tolerance and iteration budget must be positive");
  }
  if (const auto& c = problem.constraint(); c && c->alpha.isZero(0.0)) {
    throw InvalidArgument("affine constraint with alpha = 0");
  }
  const SdpInstance instance = BuildSdpInstance(problem);
  SdpBackend backend = config.backend;
  if (backend == SdpBackend::kAuto) {
    backend = problem.size() <= config.auto_admm_max_labels
                  ? SdpBackend::kDualAdmm
                  : SdpBackend::kBurerMonteiro;
  }
  SdpSolution sol = backend == SdpBackend::kDualAdmm
                        ? internal::SolveSdpDualAdmm(instance, config)
                        : internal::SolveSdpBurerMonteiro(instance, config);
  if (config.strict && !sol.residuals.converged) {
    throw SolverError(
        "SDP did not converge in " + std::to_string(sol.residuals.iterations) +
        " iterations (primal " + std::to_string(sol.residuals.primal_infeasibility) +
        ", dual " + std::to_string(sol.residuals.dual_infeasibility) + ", gap " +
        std::to_string(sol.residuals.relative_gap) + ")");
  }
  return sol;
}

DecodeSolution SdpDecode(const QboProblem& problem, const SdpConfig& config,
                         int num_samples, std::uint64_t seed) {
  const SdpSolution sol = SolveSdp(problem, config);
  return GaussianRound(sol, problem, num_samples, seed, config.psd_floor);
}

}  // namespace mlprior
