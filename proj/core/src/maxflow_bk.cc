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

// Boykov-Kolmogorov augmenting paths with two search trees that are reused
// between augmentations.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <vector>

#include "maxflow_internal.h"

namespace mlprior::internal {
namespace {

constexpr int kNoParent = -1;
constexpr int kTerminal = -2;
constexpr int kOrphan = -3;

enum class Tree : std::uint8_t { kFree, kSource, kSink };

class BkSolver {
 public:
  explicit BkSolver(FlowNetwork& net)
      : net_(net),
        out_(*net.out),
        parent_(net.num_nodes, kNoParent),
        tree_(net.num_nodes, Tree::kFree),
        is_active_(net.num_nodes, 0) {}

  double Run() {
    double flow = 0.0;
    for (int i = 0; i < net_.num_nodes; ++i) {
      const double direct =
          std::min(net_.source_residual[i], net_.sink_residual[i]);
      flow += direct;
      net_.source_residual[i] -= direct;
      net_.sink_residual[i] -= direct;
      if (net_.source_residual[i] > net_.eps) {
        tree_[i] = Tree::kSource;
        parent_[i] = kTerminal;
        Activate(i);
      } else if (net_.sink_residual[i] > net_.eps) {
        tree_[i] = Tree::kSink;
        parent_[i] = kTerminal;
        Activate(i);
      }
    }
    while (true) {
      const int mid = Grow();
      if (mid < 0) break;
      flow += Augment(mid);
      Adopt();
    }
    return flow;
  }

 private:
  void Activate(int i) {
    if (!is_active_[i]) {
      is_active_[i] = 1;
      active_.push_back(i);
    }
  }

  // Residual capacity of the arc from a parent towards i (source tree) or
  // from i towards its parent (sink tree), for the arc a stored at i.
  bool TreeArcOpen(Tree t, int a) const {
    return t == Tree::kSource ? net_.residual[a ^ 1] > net_.eps
                              : net_.residual[a] > net_.eps;
  }

  // Returns an arc from a source-tree node to a sink-tree node with residual
  // capacity, or -1 when the trees cannot meet.
  int Grow() {
    while (!active_.empty()) {
      const int i = active_.front();
      if (tree_[i] == Tree::kFree) {
        active_.pop_front();
        is_active_[i] = 0;
        continue;
      }
      for (int a : out_[i]) {
        const int j = net_.head[a];
        if (tree_[i] == Tree::kSource) {
          if (net_.residual[a] <= net_.eps) continue;
          if (tree_[j] == Tree::kFree) {
            tree_[j] = Tree::kSource;
            parent_[j] = a ^ 1;
            Activate(j);
          } else if (tree_[j] == Tree::kSink) {
            return a;
          }
        } else {
          if (net_.residual[a ^ 1] <= net_.eps) continue;
          if (tree_[j] == Tree::kFree) {
            tree_[j] = Tree::kSink;
            parent_[j] = a ^ 1;
            Activate(j);
          } else if (tree_[j] == Tree::kSource) {
            return a ^ 1;
          }
        }
      }
      active_.pop_front();
      is_active_[i] = 0;
    }
    return -1;
  }

  double Augment(int mid) {
    const int p = net_.head[mid ^ 1];
    const int q = net_.head[mid];
    double bottleneck = net_.residual[mid];
    int i = p;
    for (; parent_[i] != kTerminal; i = net_.head[parent_[i]]) {
      bottleneck = std::min(bottleneck, net_.residual[parent_[i] ^ 1]);
    }
    bottleneck = std::min(bottleneck, net_.source_residual[i]);
    for (i = q; parent_[i] != kTerminal; i = net_.head[parent_[i]]) {
      bottleneck = std::min(bottleneck, net_.residual[parent_[i]]);
    }
    bottleneck = std::min(bottleneck, net_.sink_residual[i]);

    net_.residual[mid] -= bottleneck;
    net_.residual[mid ^ 1] += bottleneck;
    for (i = p; parent_[i] != kTerminal;) {
      const int a = parent_[i];
      const int next = net_.head[a];
      net_.residual[a ^ 1] -= bottleneck;
      net_.residual[a] += bottleneck;
      if (net_.residual[a ^ 1] <= net_.eps) MakeOrphan(i);
      i = next;
    }
    net_.source_residual[i] -= bottleneck;
    if (net_.source_residual[i] <= net_.eps) MakeOrphan(i);
    for (i = q; parent_[i] != kTerminal;) {
      const int a = parent_[i];
      const int next = net_.head[a];
      net_.residual[a] -= bottleneck;
      net_.residual[a ^ 1] += bottleneck;
      if (net_.residual[a] <= net_.eps) MakeOrphan(i);
      i = next;
    }
    net_.sink_residual[i] -= bottleneck;
    if (net_.sink_residual[i] <= net_.eps) MakeOrphan(i);
    return bottleneck;
  }

  void MakeOrphan(int i) {
    parent_[i] = kOrphan;
    orphans_.push_back(i);
  }

  // Distance to the terminal through valid parents, or -1 if the chain ends
  // in an orphan.
  int RootDistance(int j) const {
    int d = 0;
    while (parent_[j] >= 0) {
      j = net_.head[parent_[j]];
      ++d;
    }
    return parent_[j] == kTerminal ? d : -1;
  }

  void Adopt() {
    while (!orphans_.empty()) {
      const int i = orphans_.front();
      orphans_.pop_front();
      const Tree t = tree_[i];
      const double terminal_res =
          t == Tree::kSource ? net_.source_residual[i] : net_.sink_residual[i];
      if (terminal_res > net_.eps) {
        parent_[i] = kTerminal;
        continue;
      }
      int best = kNoParent;
      int best_dist = std::numeric_limits<int>::max();
      for (int a : out_[i]) {
        const int j = net_.head[a];
        if (tree_[j] != t || !TreeArcOpen(t, a)) continue;
        const int d = RootDistance(j);
        if (d >= 0 && d < best_dist) {
          best = a;
          best_dist = d;
        }
      }
      if (best != kNoParent) {
        parent_[i] = best;
        continue;
      }
      for (int a : out_[i]) {
        const int j = net_.head[a];
        if (tree_[j] != t) continue;
        if (TreeArcOpen(t, a)) Activate(j);
        if (parent_[j] >= 0 && net_.head[parent_[j]] == i) MakeOrphan(j);
      }
      tree_[i] = Tree::kFree;
      parent_[i] = kNoParent;
    }
  }

  FlowNetwork& net_;
  const std::vector<std::vector<int>>& out_;
  std::vector<int> parent_;
  std::vector<Tree> tree_;
  std::vector<char> is_active_;
  std::deque<int> active_;
  std::deque<int> orphans_;
};

}  // namespace

double BoykovKolmogorovMaxFlow(FlowNetwork& net) { return BkSolver(net).Run(); }

}  // namespace mlprior::internal
