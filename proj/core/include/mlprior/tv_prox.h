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

#ifndef MLPRIOR_TV_PROX_H_
#define MLPRIOR_TV_PROX_H_

#include <vector>

#include <Eigen/Dense>

#include "mlprior/labeling.h"

namespace mlprior {

struct WeightedEdge {
  int i;
  int j;
  double weight;  // >= 0
};

// argmin_u 1/2 ||u - g||^2 + sum_e w_e |u_i - u_j| on an arbitrary graph,
// by divide and conquer over levels: each group is tested at the mean of its
// (adjusted) targets with one min-cut, and split along the cut if the cut
// has negative value.
Eigen::VectorXd GraphTvProx(int num_nodes, const std::vector<WeightedEdge>& edges,
                            const Eigen::VectorXd& g);

// Proximal problem behind cardinality-constrained decoding with a
// non-positive prior A:
//
//   u* = argmin_u 1/2 ||u - g||^2 + J(u),   g = 4 A 1 + 2 b,
//
// where J is the Lovasz extension of S -> 4 * 1_S^T A 1_S. Thresholding u*
// at any level theta gives {u* >= theta}, a maximizer of
// u^T b - u^T A u - theta * #positives over {-1,1}^V.
struct TvProxResult {
  Eigen::VectorXd u_star;
  // Distinct levels of u_star, descending. Values closer than `level_tol`
  // are one level, represented by its smallest member so that
  // ThresholdLabeling(u_star, level) covers the whole level.
  std::vector<double> breakpoints;
  double level_tol = 0.0;
  Eigen::VectorXd g;
};

TvProxResult SolveTvProx(const Eigen::MatrixXd& A, const Eigen::VectorXd& b);

// J(u) as above.
double PriorLovaszExtension(const Eigen::MatrixXd& A, const Eigen::VectorXd& u);

// +1 where u* >= theta.
Labeling ThresholdLabeling(const Eigen::VectorXd& u_star, double theta);

}  // namespace mlprior

#endif  // MLPRIOR_TV_PROX_H_
