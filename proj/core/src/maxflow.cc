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

#include "mlprior/maxflow.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

#include "maxflow_internal.h"
#include "mlprior/errors.h"

namespace mlprior {

MaxFlowGraph::MaxFlowGraph(int num_nodes)
    : num_nodes_(num_nodes),
      out_(num_nodes),
      source_cap_(num_nodes, 0.0),
      sink_cap_(num_nodes, 0.0),
      source_side_(num_nodes, 0) {
  if (num_nodes < 0) throw InvalidArgument("negative node count");
}

void MaxFlowGraph::CheckNode(int node) const {
  if (node < 0 || node >= num_nodes_) {
    throw InvalidArgument("node " + std::to_string(node) + " out of range");
  }
}

void MaxFlowGraph::AddTerminalCapacities(int node, double source_cap,
                                         double sink_cap) {
  CheckNode(node);
  if (!(source_cap >= 0.0) || !(sink_cap >= 0.0) || !std::isfinite(source_cap) ||
      !std::isfinite(sink_cap)) {
    throw InvalidArgument("terminal capacities must be finite and >= 0");
  }
  source_cap_[node] += source_cap;
  sink_cap_[node] += sink_cap;
}

void MaxFlowGraph::AddEdge(int i, int j, double cap_ij, double cap_ji) {
  CheckNode(i);
  CheckNode(j);
  if (i == j) throw InvalidArgument("self loop");
  if (!(cap_ij >= 0.0) || !(cap_ji >= 0.0) || !std::isfinite(cap_ij) ||
      !std::isfinite(cap_ji)) {
    throw InvalidArgument("edge capacities must be finite and >= 0");
  }
  const int a = static_cast<int>(head_.size());
  head_.push_back(j);
  cap_.push_back(cap_ij);
  head_.push_back(i);
  cap_.push_back(cap_ji);
  out_[i].push_back(a);
  out_[j].push_back(a + 1);
}

double MaxFlowGraph::Solve(MaxFlowAlgorithm algorithm) {
  internal::FlowNetwork net;
  net.num_nodes = num_nodes_;
  net.head = head_;
  net.residual = cap_;
  net.out = &out_;
  net.source_residual = source_cap_;
  net.sink_residual = sink_cap_;
  double max_cap = 0.0;
  for (double c : cap_) max_cap = std::max(max_cap, c);
  for (int i = 0; i < num_nodes_; ++i) {
    max_cap = std::max({max_cap, source_cap_[i], sink_cap_[i]});
  }
  net.eps = 1e-13 * std::max(max_cap, 1e-300);

  if (algorithm == MaxFlowAlgorithm::kAuto) {
    const double n = num_nodes_;
    algorithm = num_edges() > 0.25 * n * n ? MaxFlowAlgorithm::kPushRelabel
                                           : MaxFlowAlgorithm::kBoykovKolmogorov;
  }
  const double flow = algorithm == MaxFlowAlgorithm::kPushRelabel
                          ? internal::PushRelabelMaxFlow(net)
                          : internal::BoykovKolmogorovMaxFlow(net);

  // Sink side: nodes that still reach the sink in the residual network.
  std::vector<char> reaches_sink(num_nodes_, 0);
  std::deque<int> queue;
  for (int i = 0; i < num_nodes_; ++i) {
    if (net.sink_residual[i] > net.eps) {
      reaches_sink[i] = 1;
      queue.push_back(i);
    }
  }
  while (!queue.empty()) {
    const int i = queue.front();
    queue.pop_front();
    for (int a : out_[i]) {
      const int j = net.head[a];
      if (!reaches_sink[j] && net.residual[a ^ 1] > net.eps) {
        reaches_sink[j] = 1;
        queue.push_back(j);
      }
    }
  }
  for (int i = 0; i < num_nodes_; ++i) source_side_[i] = !reaches_sink[i];
  return flow;
}

}  // namespace mlprior
