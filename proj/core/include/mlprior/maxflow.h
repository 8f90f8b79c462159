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

#ifndef MLPRIOR_MAXFLOW_H_
#define MLPRIOR_MAXFLOW_H_

#include <vector>

namespace mlprior {

enum class MaxFlowAlgorithm {
  kAuto,               // Boykov-Kolmogorov on sparse graphs, push-relabel on dense
  kBoykovKolmogorov,
  kPushRelabel,
};

// s-t network over `num_nodes` inner nodes with implicit source and sink.
// Capacities are non-negative reals.
class MaxFlowGraph {
 public:
  explicit MaxFlowGraph(int num_nodes);

  int num_nodes() const { return num_nodes_; }
  int num_edges() const { return static_cast<int>(head_.size() / 2); }

  // Accumulates onto the source->node and node->sink capacities.
  void AddTerminalCapacities(int node, double source_cap, double sink_cap);
  // Arc pair i->j (cap_ij) and j->i (cap_ji).
  void AddEdge(int i, int j, double cap_ij, double cap_ji);

  // Computes a maximum flow and returns its value. May be called again, e.g.
  // with another algorithm; each call starts from zero flow.
  double Solve(MaxFlowAlgorithm algorithm = MaxFlowAlgorithm::kAuto);

  // After Solve: whether `node` is on the source side of the minimum cut.
  // The returned cut has the largest source side among all minimum cuts.
  bool InSourceSet(int node) const { return source_side_[node] != 0; }

 private:
  void CheckNode(int node) const;

  int num_nodes_;
  std::vector<int> head_;
  std::vector<double> cap_;
  std::vector<std::vector<int>> out_;
  std::vector<double> source_cap_;
  std::vector<double> sink_cap_;
  std::vector<char> source_side_;
};

}  // namespace mlprior

#endif  // MLPRIOR_MAXFLOW_H_
