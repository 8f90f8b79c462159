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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "mlprior/errors.h"
#include "mlprior/sdp.h"

namespace mlprior {
namespace {

// Top-k entries of v become +1 (ties by index), i.e. the sign pattern with
// the fewest smallest-margin flips.
Labeling ProjectToCardinality(const Eigen::VectorXd& v, int k) {
  const int n = static_cast<int>(v.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return v[i] > v[j]; });
  Labeling out = Labeling::AllNegative(n);
  for (int r = 0; r < k; ++r) out.Set(order[r], 1);
  return out;
}

}  // namespace

DecodeSolution GaussianRound(const SdpSolution& solution,
                             const QboProblem& problem, int num_samples,
                             std::uint64_t seed, double psd_floor) {
  const int n = problem.size();
  if (num_samples < 1) throw InvalidArgument("num_samples must be >= 1");
  if (solution.u.size() != n || solution.U.rows() != n || solution.U.cols() != n) {
    throw DimensionError("SDP solution does not match the problem size");
  }
  const auto& constraint = problem.constraint();
  // -1 when there is no cardinality row.
  const int k = constraint ? constraint->Cardinality().value_or(-1) : -1;

  auto project = [&](const Eigen::VectorXd& v) {
    return k >= 0 ? ProjectToCardinality(v, k) : Labeling::FromSigns(v);
  };

  std::optional<Labeling> best;
  double best_value = 0.0;
  auto consider = [&](const Labeling& cand) {
    if (constraint && k < 0 && !constraint->SatisfiedBy(cand)) return;
    const double value = problem.Objective(cand);
    if (!best || value > best_value) {
      best = cand;
      best_value = value;
    }
  };

  consider(project(solution.u));

  Eigen::MatrixXd cov = solution.U - solution.u * solution.u.transpose();
  cov = 0.5 * (cov + cov.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  const Eigen::VectorXd root = eig.eigenvalues().unaryExpr(
      [psd_floor](double x) { return x > psd_floor ? std::sqrt(x) : 0.0; });
  const Eigen::MatrixXd factor = eig.eigenvectors() * root.asDiagonal();

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Eigen::VectorXd z(n);
  for (int s = 0; s < num_samples; ++s) {
    for (int i = 0; i < n; ++i) z[i] = normal(rng);
    consider(project(solution.u + factor * z));
  }
  if (!best) {
    throw SolverError("Gaussian rounding found no labeling satisfying the constraint");
  }

  DecodeSolution out;
  out.relaxed_u = solution.u;
  out.relaxed_U = solution.U;
  out.relaxation_value = solution.value;
  out.rounded = *best;
  out.rounded_value = best_value;
  out.solver = SolverTag::kSdp;
  return out;
}

}  // namespace mlprior
