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

#ifndef MLPRIOR_SRC_MAXFLOW_INTERNAL_H_
#define MLPRIOR_SRC_MAXFLOW_INTERNAL_H_

#include <vector>

namespace mlprior::internal {

// Residual network shared by the max-flow engines. Arc a and a^1 are
// mutual reverses; terminal arcs are kept as per-node residuals.
struct FlowNetwork {
  int num_nodes = 0;
  std::vector<int> head;
  std::vector<double> residual;
  const std::vector<std::vector<int>>* out = nullptr;
  std::vector<double> source_residual;
  std::vector<double> sink_residual;
  // Residuals at or below this are treated as saturated.
  double eps = 0.0;
};

double BoykovKolmogorovMaxFlow(FlowNetwork& net);
double PushRelabelMaxFlow(FlowNetwork& net);

}  // namespace mlprior::internal

#endif  // MLPRIOR_SRC_MAXFLOW_INTERNAL_H_
