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

#ifndef MLPRIOR_MINCUT_DECODER_H_
#define MLPRIOR_MINCUT_DECODER_H_

#include <vector>

#include "mlprior/labeling.h"
#include "mlprior/maxflow.h"
#include "mlprior/qbo.h"

namespace mlprior {

// Graph-cut form of a QboProblem with non-positive off-diagonal A. With
// z = (u + 1) / 2 and z_i = 1 meaning node i on the source side,
//
//   -(u^T b - u^T A u) = constant + sum_i c_i z_i
//                        + sum_{i<j} (-4 A_ij) |z_i - z_j|,   c_i = -2 b_i,
//
// and the unary terms become terminal arcs (c_i > 0: node->sink, c_i < 0:
// source->node plus c_i folded into `constant`).
struct CutGraph {
  struct PairArc {
    int i;
    int j;
    double capacity;
  };

  int num_labels = 0;
  std::vector<double> source_caps;
  std::vector<double> sink_caps;
  std::vector<PairArc> pairs;
  double constant = 0.0;

  // Capacity of the cut whose source side is {i : u_i = +1}.
  double CutValue(const Labeling& u) const;
  MaxFlowGraph ToMaxFlowGraph() const;
};

// Requires A_ij <= 0 off the diagonal.
CutGraph BuildCutGraph(const QboProblem& problem);

// Exact maximizer for non-positive off-diagonal A and no constraint.
DecodeSolution MinCutDecode(const QboProblem& problem,
                            MaxFlowAlgorithm algorithm = MaxFlowAlgorithm::kAuto);

}  // namespace mlprior

#endif  // MLPRIOR_MINCUT_DECODER_H_
