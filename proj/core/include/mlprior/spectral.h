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

#ifndef MLPRIOR_SPECTRAL_H_
#define MLPRIOR_SPECTRAL_H_

#include <Eigen/Dense>

#include "mlprior/qbo.h"

namespace mlprior {

struct SpectralConfig {
  // Stop the multiplier search once |beta - alpha^T u(mu)| is below this.
  double subgradient_tolerance = 1e-6;
  int max_bisection_steps = 100;
  double bracket_cap = 1e6;
};

// Sphere relaxation u^T u = V. The affine row, if any, is dualized and its
// multiplier found by bisection; relaxation_value is the smallest dual value
// visited.
DecodeSolution SpectralDecode(const QboProblem& problem,
                              const SpectralConfig& config = {});

// Elimination of v = (u; 1) against N = [alpha 0; 0 1] = Q R.
struct QrReducedProblem {
  Eigen::MatrixXd Q;      // (V+1) x (V+1)
  Eigen::MatrixXd R;      // (V+1) x 2, upper triangular top block
  Eigen::Vector2d fixed;  // w1 = R_top^{-T} (beta, 1)
  Eigen::Matrix2d delta;  // blocks of Q^T B Q, B = [-A b/2; b^T/2 0]
  Eigen::MatrixXd gamma;  // 2 x (V-1)
  Eigen::MatrixXd free_block;  // (V-1) x (V-1)
  double slack = 0.0;          // ||w2||^2 = V + 1 - ||w1||^2
};

QrReducedProblem BuildQrReducedProblem(const QboProblem& problem);

// Single trust-region solve on the free block; no multiplier search.
DecodeSolution SpectralDecodeQr(const QboProblem& problem);

namespace internal {
// Sign rounding, or the k largest entries under a cardinality row.
Labeling RoundSpectral(const QboProblem& problem, const Eigen::VectorXd& u);
}  // namespace internal

}  // namespace mlprior

#endif  // MLPRIOR_SPECTRAL_H_
