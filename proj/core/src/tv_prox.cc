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

#include "mlprior/tv_prox.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "mlprior/errors.h"
#include "mlprior/maxflow.h"

namespace mlprior {
namespace {

struct Group {
  std::vector<int> nodes;
};

}  // namespace

Eigen::VectorXd GraphTvProx(int num_nodes, const std::vector<WeightedEdge>& edges,
                            const Eigen::VectorXd& g) {
  if (g.size() != num_nodes) throw DimensionError("prox target length mismatch");
  std::vector<std::vector<std::pair<int, double>>> adjacency(num_nodes);
  double scale = g.lpNorm<Eigen::Infinity>();
  for (const WeightedEdge& e : edges) {
    if (!(e.weight >= 0.0)) throw InvalidArgument("negative TV weight");
    if (e.weight == 0.0) continue;
    adjacency[e.i].push_back({e.j, e.weight});
    adjacency[e.j].push_back({e.i, e.weight});
    scale += e.weight;
  }
  const double split_tol = 1e-12 * (scale + 1.0);

  Eigen::VectorXd target = g;
  Eigen::VectorXd u(num_nodes);
  std::vector<int> group_of(num_nodes, 0);
  std::vector<Group> stack;
  Group all;
  all.nodes.resize(num_nodes);
  std::iota(all.nodes.begin(), all.nodes.end(), 0);
  if (num_nodes > 0) stack.push_back(std::move(all));
  int next_group_id = 1;

  std::vector<int> local(num_nodes, -1);
  while (!stack.empty()) {
    Group group = std::move(stack.back());
    stack.pop_back();
    const int m = static_cast<int>(group.nodes.size());
    double theta = 0.0;
    for (int i : group.nodes) theta += target[i];
    theta /= m;
    if (m == 1) {
      u[group.nodes[0]] = theta;
      continue;
    }
    const int id = group_of[group.nodes[0]];
    for (int k = 0; k < m; ++k) local[group.nodes[k]] = k;

    // min over S of cut_inside(S) + sum_{i in S} (theta - target_i).
    MaxFlowGraph graph(m);
    double constant = 0.0;
    for (int k = 0; k < m; ++k) {
      const int i = group.nodes[k];
      const double a = theta - target[i];
      if (a > 0.0) {
        graph.AddTerminalCapacities(k, 0.0, a);
      } else if (a < 0.0) {
        graph.AddTerminalCapacities(k, -a, 0.0);
        constant += a;
      }
      for (const auto& [j, w] : adjacency[i]) {
        if (j > i && group_of[j] == id) graph.AddEdge(k, local[j], w, w);
      }
    }
    const double min_value = graph.Solve() + constant;

    std::vector<int> upper, lower;
    for (int k = 0; k < m; ++k) {
      (graph.InSourceSet(k) ? upper : lower).push_back(group.nodes[k]);
    }
    if (min_value >= -split_tol || upper.empty() || lower.empty()) {
      for (int i : group.nodes) u[i] = theta;
      continue;
    }
    // Upper values stay above lower ones, so crossing terms are linear.
    const int upper_id = next_group_id++;
    const int lower_id = next_group_id++;
    for (int i : upper) group_of[i] = upper_id;
    for (int i : lower) group_of[i] = lower_id;
    for (int i : upper) {
      for (const auto& [j, w] : adjacency[i]) {
        if (group_of[j] == lower_id) {
          target[i] -= w;
          target[j] += w;
        }
      }
    }
    stack.push_back({std::move(lower)});
    stack.push_back({std::move(upper)});
  }
  return u;
}

TvProxResult SolveTvProx(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
  const Eigen::Index v = b.size();
  if (A.rows() != v || A.cols() != v) throw DimensionError("prior shape mismatch");
  std::vector<WeightedEdge> edges;
  for (Eigen::Index i = 0; i < v; ++i) {
    for (Eigen::Index j = i + 1; j < v; ++j) {
      if (A(i, j) > 0.0) {
        throw InvalidArgument("TV prox requires non-positive off-diagonal A");
      }
      if (A(i, j) < 0.0) {
        edges.push_back({static_cast<int>(i), static_cast<int>(j), -4.0 * A(i, j)});
      }
    }
  }
  TvProxResult result;
  result.g = 4.0 * A * Eigen::VectorXd::Ones(v) + 2.0 * b;
  // J = cut part + 4 (A 1)^T u, and the linear part shifts the target to 2b.
  result.u_star = GraphTvProx(static_cast<int>(v), edges, 2.0 * b);
  std::vector<double> values(result.u_star.data(), result.u_star.data() + v);
  std::sort(values.begin(), values.end(), std::greater<>());
  result.level_tol =
      1e-9 * (result.u_star.lpNorm<Eigen::Infinity>() + A.lpNorm<1>() + 1.0);
  for (double x : values) {
    if (result.breakpoints.empty() ||
        x < result.breakpoints.back() - result.level_tol) {
      result.breakpoints.push_back(x);
    } else {
      result.breakpoints.back() = x;
    }
  }
  return result;
}

double PriorLovaszExtension(const Eigen::MatrixXd& A, const Eigen::VectorXd& u) {
  const Eigen::Index v = u.size();
  double j = 4.0 * (A * Eigen::VectorXd::Ones(v)).dot(u);
  for (Eigen::Index i = 0; i < v; ++i) {
    for (Eigen::Index k = i + 1; k < v; ++k) {
      j += -4.0 * A(i, k) * std::abs(u[i] - u[k]);
    }
  }
  return j;
}

Labeling ThresholdLabeling(const Eigen::VectorXd& u_star, double theta) {
  std::vector<std::int8_t> bits(u_star.size());
  for (Eigen::Index i = 0; i < u_star.size(); ++i) {
    bits[i] = u_star[i] >= theta ? 1 : -1;
  }
  return Labeling(std::move(bits));
}

}  // namespace mlprior
