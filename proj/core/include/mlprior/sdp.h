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

#ifndef MLPRIOR_SDP_H_
#define MLPRIOR_SDP_H_

#include <cstdint>
#include <optional>

#include <Eigen/Dense>

#include "mlprior/qbo.h"

namespace mlprior {

enum class SdpBackend {
  kAuto,           // dual ADMM up to auto_admm_max_labels, Burer-Monteiro above
  kDualAdmm,       // full eigendecomposition per iteration
  kBurerMonteiro,  // M = R R^T with unit rows, Riemannian gradient ascent
};

struct SdpConfig {
  SdpBackend backend = SdpBackend::kAuto;
  // Relative primal/dual residual and duality gap targets.
  double tolerance = 1e-5;
  int max_iterations = 20000;
  // Eigenvalues below this are clipped when factoring covariances.
  double psd_floor = 1e-10;
  int auto_admm_max_labels = 50;
  // Factor rank for Burer-Monteiro; 0 picks ceil(sqrt(2 (V + 1))) + 1.
  int rank = 0;
  std::uint64_t seed = 0;
  // Throw SolverError instead of returning an unconverged solution.
  bool strict = false;
};

// max <C, M>  s.t. Diag(M) = 1, M >= 0, and optionally <G, M> = beta, with
//
//   C = [ -A     b/2 ]      G = 1/2 (a e^T + e a^T),  a = (alpha, 0),
//       [ b^T/2   0  ]      e = last basis vector,
//
// so that <G, M> = alpha^T u for M = [U u; u^T 1].
struct SdpInstance {
  Eigen::MatrixXd cost;
  std::optional<Eigen::MatrixXd> constraint_matrix;
  double beta = 0.0;

  int dim() const { return static_cast<int>(cost.rows()); }
};

SdpInstance BuildSdpInstance(const QboProblem& problem);

struct SdpResiduals {
  double primal_infeasibility = 0.0;
  double dual_infeasibility = 0.0;
  double relative_gap = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct SdpSolution {
  Eigen::VectorXd u;  // last column of M without the corner
  Eigen::MatrixXd U;  // top-left V x V block
  // Dual objective at a feasible (eigenvalue-shifted) dual point: an upper
  // bound on the relaxation optimum, and hence on the discrete maximum.
  double value = 0.0;
  // <C, M> at the returned primal point.
  double primal_value = 0.0;
  SdpResiduals residuals;
  SdpBackend backend = SdpBackend::kDualAdmm;
};

SdpSolution SolveSdp(const QboProblem& problem, const SdpConfig& config = {});

// sum(y) + lambda * beta after shifting y so that
// Diag(y) + lambda G - C is positive semidefinite.
double CertifiedSdpBound(const SdpInstance& instance,
                         const Eigen::VectorXd& diag_multipliers,
                         double affine_multiplier);

// Samples v ~ N(u, U - u u^T), takes signs, projects onto the cardinality
// constraint when present, and keeps the best labeling (sign(u) is always a
// candidate and is scored first). Deterministic for a given seed.
DecodeSolution GaussianRound(const SdpSolution& solution,
                             const QboProblem& problem, int num_samples,
                             std::uint64_t seed, double psd_floor = 1e-10);

inline constexpr int kDefaultRoundingSamples = 100;

DecodeSolution SdpDecode(const QboProblem& problem, const SdpConfig& config,
                         int num_samples, std::uint64_t seed);

namespace internal {
SdpSolution SolveSdpDualAdmm(const SdpInstance& instance, const SdpConfig& config);
SdpSolution SolveSdpBurerMonteiro(const SdpInstance& instance,
                                  const SdpConfig& config);
// Splits a (nearly) unit-diagonal PSD matrix into u and U after rescaling
// its diagonal to one.
void SplitLiftedMatrix(const Eigen::MatrixXd& M, SdpSolution* solution);
}  // namespace internal

}  // namespace mlprior

#endif  // MLPRIOR_SDP_H_
