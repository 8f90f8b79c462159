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

#include "mlprior/cardinality_decoder.h"

#include <cmath>
#include <limits>
#include <vector>

#include "mlprior/errors.h"

namespace mlprior {

Labeling GreedyCardinalityRepair(const QboProblem& problem, Labeling start,
                                 int k) {
  const Eigen::MatrixXd& A = problem.A();
  const Eigen::VectorXd& b = problem.b();
  Labeling u = std::move(start);
  Eigen::VectorXd Au = A * u.ToVector();
  int count = u.CountPositive();
  while (count != k) {
    const int from = count < k ? -1 : 1;
    int best = -1;
    double best_delta = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < u.size(); ++i) {
      if (u[i] != from) continue;
      const double delta = -2.0 * u[i] * b[i] + 4.0 * u[i] * Au[i];
      if (delta > best_delta) {
        best_delta = delta;
        best = i;
      }
    }
    Au -= (2.0 * u[best]) * A.col(best);
    u.Flip(best);
    count += from < 0 ? 1 : -1;
  }
  return u;
}

DecodeSolution CardinalityDecodeNonPositive(const QboProblem& problem) {
  if (!problem.constraint()) {
    throw InvalidArgument("cardinality decoding needs a cardinality constraint");
  }
  const std::optional<int> card = problem.constraint()->Cardinality();
  if (!card) {
    throw InvalidArgument(
        "cardinality decoding supports only u^T 1 = 2k - V constraints");
  }
  if (!problem.OffDiagonalNonPositive()) {
    throw InvalidArgument(
        "cardinality decoding requires non-positive off-diagonal prior entries");
  }
  const int v = problem.size();
  const int k = *card;
  if (k == 0) {
    return IntegralSolution(problem, Labeling::AllNegative(v),
                            SolverTag::kCardinalityTv);
  }
  if (k == v) {
    return IntegralSolution(problem, Labeling::AllPositive(v),
                            SolverTag::kCardinalityTv);
  }

  const TvProxResult prox = SolveTvProx(problem.A(), problem.b());
  struct Candidate {
    Labeling labeling;
    int size;
    double value;
  };
  std::vector<Candidate> level_sets;
  level_sets.push_back({Labeling::AllNegative(v), 0,
                        problem.Objective(Labeling::AllNegative(v))});
  // Tightest Lagrangian upper bound over the thresholds.
  double bound = std::numeric_limits<double>::infinity();
  for (double theta : prox.breakpoints) {
    Labeling s = ThresholdLabeling(prox.u_star, theta);
    const int size = s.CountPositive();
    const double value = problem.Objective(s);
    bound = std::min(bound, value - theta * (size - k));
    if (size == k) {
      return IntegralSolution(problem, std::move(s), SolverTag::kCardinalityTv);
    }
    level_sets.push_back({std::move(s), size, value});
  }

  // k lies strictly inside one level: repair from both neighbours.
  const Candidate* below = &level_sets.front();
  const Candidate* above = nullptr;
  for (const Candidate& c : level_sets) {
    if (c.size < k) below = &c;
    if (c.size > k && above == nullptr) above = &c;
  }
  Labeling best = GreedyCardinalityRepair(problem, below->labeling, k);
  double best_value = problem.Objective(best);
  if (above != nullptr) {
    Labeling other = GreedyCardinalityRepair(problem, above->labeling, k);
    const double other_value = problem.Objective(other);
    if (other_value > best_value) {
      best = std::move(other);
      best_value = other_value;
    }
  }
  DecodeSolution sol =
      IntegralSolution(problem, std::move(best), SolverTag::kCardinalityTv);
  const double tol = 1e-9 * (problem.b().lpNorm<1>() + problem.A().lpNorm<1>() + 1.0);
  if (sol.rounded_value < bound - tol) {
    sol.approximate = true;
    sol.relaxation_value = bound;
  }
  return sol;
}

}  // namespace mlprior
