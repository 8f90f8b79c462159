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

#include <algorithm>
#include <cmath>
#include <random>

#include "mlprior/errors.h"
#include "mlprior/sdp.h"

namespace mlprior::internal {
namespace {

void NormalizeRows(Eigen::MatrixXd* R) {
  for (Eigen::Index i = 0; i < R->rows(); ++i) {
    const double norm = R->row(i).norm();
    if (norm > 0.0) {
      R->row(i) /= norm;
    } else {
      R->row(i).setZero();
      (*R)(i, 0) = 1.0;
    }
  }
}

// Project each row of `grad` onto the tangent space of its unit sphere.
Eigen::MatrixXd TangentProject(const Eigen::MatrixXd& R,
                               const Eigen::MatrixXd& grad) {
  Eigen::MatrixXd out = grad;
  for (Eigen::Index i = 0; i < R.rows(); ++i) {
    out.row(i) -= grad.row(i).dot(R.row(i)) * R.row(i);
  }
  return out;
}

}  // namespace

SdpSolution SolveSdpBurerMonteiro(const SdpInstance& instance,
                                  const SdpConfig& config) {
  const int n = instance.dim();
  const bool constrained = instance.constraint_matrix.has_value();
  const double scale = std::max(1.0, instance.cost.norm());
  const Eigen::MatrixXd C = instance.cost / scale;
  const Eigen::MatrixXd G =
      constrained ? *instance.constraint_matrix : Eigen::MatrixXd::Zero(n, n);
  if (constrained && G.isZero(0.0)) {
    throw InvalidArgument("affine constraint with alpha = 0");
  }
  const double beta = instance.beta;
  int rank = config.rank > 0
                 ? config.rank
                 : static_cast<int>(std::ceil(std::sqrt(2.0 * n))) + 1;
  rank = std::clamp(rank, 1, n);

  std::mt19937_64 rng(config.seed);
  std::normal_distribution<double> normal;
  Eigen::MatrixXd R(n, rank);
  for (Eigen::Index i = 0; i < R.size(); ++i) R.data()[i] = normal(rng);
  NormalizeRows(&R);

  double lambda = 0.0;
  double rho = constrained ? 10.0 : 0.0;
  auto residual = [&](const Eigen::MatrixXd& Rm) {
    return constrained ? (G.array() * (Rm * Rm.transpose()).array()).sum() - beta
                       : 0.0;
  };
  auto merit = [&](const Eigen::MatrixXd& Rm) {
    const double h = residual(Rm);
    return (C.array() * (Rm * Rm.transpose()).array()).sum() - lambda * h -
           0.5 * rho * h * h;
  };

  const double grad_tol = 1e-2 * config.tolerance;
  double step = 1.0;
  int iterations = 0;
  double prev_h = std::abs(residual(R));
  const int max_outer = constrained ? 60 : 1;
  // Each outer round gets its own share of the budget; early rounds only
  // need the gradient as small as the current infeasibility.
  const int inner_budget = std::max(100, config.max_iterations / max_outer);
  for (int outer = 0; outer < max_outer; ++outer) {
    double value = merit(R);
    const double inner_tol =
        constrained ? std::max(grad_tol, std::min(1e-2, 0.1 * prev_h)) : grad_tol;
    for (int inner = 0; inner < inner_budget && iterations < config.max_iterations;
         ++inner) {
      ++iterations;
      const double h = residual(R);
      const Eigen::MatrixXd egrad = 2.0 * (C - (lambda + rho * h) * G) * R;
      const Eigen::MatrixXd rgrad = TangentProject(R, egrad);
      const double gnorm2 = rgrad.squaredNorm();
      if (std::sqrt(gnorm2) <= inner_tol) break;
      bool accepted = false;
      while (step > 1e-14) {
        Eigen::MatrixXd candidate = R + step * rgrad;
        NormalizeRows(&candidate);
        const double cand_value = merit(candidate);
        if (cand_value >= value + 1e-4 * step * gnorm2) {
          R = std::move(candidate);
          value = cand_value;
          accepted = true;
          step = std::min(step * 2.0, 1e3);
          break;
        }
        step *= 0.5;
      }
      if (!accepted) break;
    }
    if (!constrained) break;
    const double h = residual(R);
    if (std::abs(h) <= config.tolerance && prev_h <= config.tolerance) break;
    lambda += rho * h;
    if (std::abs(h) > 0.25 * prev_h) rho = std::min(rho * 5.0, 1e8);
    prev_h = std::abs(h);
    step = 1.0;
  }

  // Multipliers from first-order stationarity of the effective cost.
  const double h = residual(R);
  const double affine = constrained ? lambda + rho * h : 0.0;
  const Eigen::MatrixXd CR = (C - affine * G) * R;
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) y[i] = CR.row(i).dot(R.row(i));

  SdpSolution sol;
  sol.backend = SdpBackend::kBurerMonteiro;
  const Eigen::MatrixXd M = R * R.transpose();
  SplitLiftedMatrix(M, &sol);
  sol.primal_value = (instance.cost.array() * M.array()).sum();
  sol.value = CertifiedSdpBound(instance, scale * y, scale * affine);

  sol.residuals.iterations = iterations;
  sol.residuals.primal_infeasibility = std::abs(h);
  sol.residuals.dual_infeasibility =
      std::max(0.0, sol.value - (scale * y.sum() + (constrained ? scale * affine * beta : 0.0))) /
      (scale * n);
  sol.residuals.relative_gap =
      std::abs(sol.value - sol.primal_value) /
      (1.0 + std::abs(sol.value) + std::abs(sol.primal_value));
  sol.residuals.converged = sol.residuals.relative_gap <= config.tolerance &&
                            sol.residuals.primal_infeasibility <= config.tolerance;
  return sol;
}

}  // namespace mlprior::internal
