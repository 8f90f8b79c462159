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

// FIFO push-relabel (preflow phase only) with global relabeling and the gap
// heuristic. The minimum cut is read off the final preflow.

#include <algorithm>
#include <deque>
#include <vector>

#include "maxflow_internal.h"

namespace mlprior::internal {
namespace {

class PushRelabelSolver {
 public:
  explicit PushRelabelSolver(FlowNetwork& net)
      : net_(net), n_(net.num_nodes + 2), source_(net.num_nodes),
        sink_(net.num_nodes + 1) {
    head_ = net.head;
    residual_ = net.residual;
    out_ = *net.out;
    out_.resize(n_);
    terminal_arc_.resize(net.num_nodes);
    for (int i = 0; i < net.num_nodes; ++i) {
      terminal_arc_[i].first = AddArc(source_, i, net.source_residual[i]);
      terminal_arc_[i].second = AddArc(i, sink_, net.sink_residual[i]);
    }
    height_.assign(n_, 0);
    excess_.assign(n_, 0.0);
    current_.assign(n_, 0);
    count_.assign(2 * n_ + 1, 0);
    queued_.assign(n_, 0);
  }

  double Run() {
    height_[source_] = n_;
    for (int a : out_[source_]) {
      const double c = residual_[a];
      if (c <= 0.0) continue;
      residual_[a] = 0.0;
      residual_[a ^ 1] += c;
      excess_[head_[a]] += c;
      excess_[source_] -= c;
    }
    GlobalRelabel();
    for (int i = 0; i < net_.num_nodes; ++i) Enqueue(i);

    int relabels_since_global = 0;
    while (!queue_.empty()) {
      const int v = queue_.front();
      queue_.pop_front();
      queued_[v] = 0;
      relabels_since_global += Discharge(v);
      if (relabels_since_global > n_) {
        GlobalRelabel();
        relabels_since_global = 0;
      }
    }

    for (std::size_t a = 0; a < net_.residual.size(); ++a) {
      net_.residual[a] = residual_[a];
    }
    for (int i = 0; i < net_.num_nodes; ++i) {
      net_.source_residual[i] = residual_[terminal_arc_[i].first];
      net_.sink_residual[i] = residual_[terminal_arc_[i].second];
    }
    return excess_[sink_];
  }

 private:
  int AddArc(int from, int to, double cap) {
    const int a = static_cast<int>(head_.size());
    head_.push_back(to);
    residual_.push_back(cap);
    head_.push_back(from);
    residual_.push_back(0.0);
    out_[from].push_back(a);
    out_[to].push_back(a + 1);
    return a;
  }

  void Enqueue(int v) {
    if (v == source_ || v == sink_ || queued_[v]) return;
    if (excess_[v] <= net_.eps || height_[v] >= n_) return;
    queued_[v] = 1;
    queue_.push_back(v);
  }

  // Exact distances to the sink in the residual graph; unreachable nodes are
  // lifted to n and drop out of the preflow phase.
  void GlobalRelabel() {
    std::fill(height_.begin(), height_.end(), n_);
    std::fill(count_.begin(), count_.end(), 0);
    height_[sink_] = 0;
    std::deque<int> bfs{sink_};
    while (!bfs.empty()) {
      const int w = bfs.front();
      bfs.pop_front();
      for (int a : out_[w]) {
        const int v = head_[a];
        if (v == source_ || height_[v] != n_) continue;
        if (residual_[a ^ 1] <= net_.eps) continue;
        height_[v] = height_[w] + 1;
        bfs.push_back(v);
      }
    }
    height_[source_] = n_;
    for (int v = 0; v < n_; ++v) {
      ++count_[height_[v]];
      current_[v] = 0;
    }
  }

  int Discharge(int v) {
    int relabels = 0;
    while (excess_[v] > net_.eps && height_[v] < n_) {
      const std::vector<int>& arcs = out_[v];
      if (current_[v] == static_cast<int>(arcs.size())) {
        Relabel(v);
        ++relabels;
        continue;
      }
      const int a = arcs[current_[v]];
      const int w = head_[a];
      if (residual_[a] > net_.eps && height_[v] == height_[w] + 1) {
        const double delta = std::min(excess_[v], residual_[a]);
        residual_[a] -= delta;
        residual_[a ^ 1] += delta;
        excess_[v] -= delta;
        excess_[w] += delta;
        Enqueue(w);
      } else {
        ++current_[v];
      }
    }
    return relabels;
  }

  void Relabel(int v) {
    const int old = height_[v];
    int lowest = 2 * n_;
    for (int a : out_[v]) {
      if (residual_[a] > net_.eps) lowest = std::min(lowest, height_[head_[a]]);
    }
    const int next = std::min(lowest + 1, n_);
    --count_[old];
    height_[v] = next;
    ++count_[next];
    current_[v] = 0;
    if (count_[old] == 0 && old < n_) {
      // Gap: nothing left at `old`, so everything above it is cut off.
      for (int u = 0; u < n_; ++u) {
        if (u != source_ && height_[u] > old && height_[u] < n_) {
          --count_[height_[u]];
          height_[u] = n_;
          ++count_[n_];
        }
      }
    }
  }

  FlowNetwork& net_;
  int n_;
  int source_;
  int sink_;
  std::vector<int> head_;
  std::vector<double> residual_;
  std::vector<std::vector<int>> out_;
  std::vector<std::pair<int, int>> terminal_arc_;
  std::vector<int> height_;
  std::vector<double> excess_;
  std::vector<int> current_;
  std::vector<int> count_;
  std::vector<char> queued_;
  std::deque<int> queue_;
};

}  // namespace

double PushRelabelMaxFlow(FlowNetwork& net) {
  return PushRelabelSolver(net).Run();
}

}  // namespace mlprior::internal
