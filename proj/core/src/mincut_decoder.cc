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

#include "mlprior/mincut_decoder.h"

#include <vector>

#include "mlprior/errors.h"

namespace mlprior {

double CutGraph::CutValue(const Labeling& u) const {
  double cut = 0.0;
  for (int i = 0; i < num_labels; ++i) {
    cut += u[i] > 0 ? sink_caps[i] : source_caps[i];
  }
  for (const PairArc& p : pairs) {
    if (u[p.i] != u[p.j]) cut += p.capacity;
  }
  return cut;
}

MaxFlowGraph CutGraph::ToMaxFlowGraph() const {
  MaxFlowGraph g(num_labels);
  for (int i = 0; i < num_labels; ++i) {
    g.AddTerminalCapacities(i, source_caps[i], sink_caps[i]);
  }
  for (const PairArc& p : pairs) g.AddEdge(p.i, p.j, p.capacity, p.capacity);
  return g;
}

CutGraph BuildCutGraph(const QboProblem& problem) {
  if (!problem.OffDiagonalNonPositive()) {
    throw InvalidArgument(
        "min-cut decoding requires non-positive off-diagonal prior entries");
  }
  const int v = problem.size();
  const Eigen::MatrixXd& A = problem.A();
  const Eigen::VectorXd& b = problem.b();
  CutGraph g;
  g.num_labels = v;
  g.source_caps.assign(v, 0.0);
  g.sink_caps.assign(v, 0.0);
  // -b^T u = sum b_i - 2 sum b_i z_i.
  g.constant = b.sum();
  for (int i = 0; i < v; ++i) {
    const double c = -2.0 * b[i];
    if (c > 0.0) {
      g.sink_caps[i] = c;
    } else if (c < 0.0) {
      g.source_caps[i] = -c;
      g.constant += c;
    }
    // u_i u_j = 1 - 2 |z_i - z_j|, and each pair appears twice in u^T A u.
    for (int j = i + 1; j < v; ++j) {
      if (A(i, j) == 0.0) continue;
      g.constant += 2.0 * A(i, j);
      g.pairs.push_back({i, j, -4.0 * A(i, j)});
    }
  }
  return g;
}

DecodeSolution MinCutDecode(const QboProblem& problem,
                            MaxFlowAlgorithm algorithm) {
  if (problem.constraint()) {
    throw InvalidArgument(
        "min-cut decoding takes unconstrained problems; use "
        "CardinalityDecodeNonPositive for cardinality constraints");
  }
  const CutGraph cut = BuildCutGraph(problem);
  MaxFlowGraph graph = cut.ToMaxFlowGraph();
  graph.Solve(algorithm);
  std::vector<std::int8_t> bits(problem.size());
  for (int i = 0; i < problem.size(); ++i) {
    bits[i] = graph.InSourceSet(i) ? 1 : -1;
  }
  return IntegralSolution(problem, Labeling(std::move(bits)),
                          SolverTag::kMinCut);
}

}  // namespace mlprior
