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

#ifndef MLPRIOR_TRS_H_
#define MLPRIOR_TRS_H_

#include <Eigen/Dense>

namespace mlprior {

// maximize u^T c - u^T A u  subject to  ||u||^2 = radius_sq.
struct TrsProblem {
  Eigen::MatrixXd A;
  Eigen::VectorXd c;
  double radius_sq = 0.0;
};

// Linearization of (lambda I - A)^2 z = c c^T z / (4 r):
//
//   S = [ A                  -I ]
//       [ -c c^T / (4 r)      A ],   S (z; y) = lambda (z; y),  y = (A - lambda) z.
Eigen::MatrixXd BuildQepPencil(const TrsProblem& problem);

struct TrsSolution {
  Eigen::VectorXd u;
  double value = 0.0;
  // Multiplier of the sphere constraint: (A - lambda I) u = c / 2 with
  // lambda <= lambda_min(A).
  double lambda = 0.0;
  bool hard_case = false;
};

TrsSolution SolveTrs(const TrsProblem& problem);

}  // namespace mlprior

#endif  // MLPRIOR_TRS_H_
