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


#include <random>

#include <gtest/gtest.h>

#include "mlprior/cardinality_decoder.h"
#include "mlprior/errors.h"
#include "mlprior/tv_prox.h"
#include "oracles.h"

namespace mlprior {
namespace {

TEST(TvProxTest, GraphProxMatchesDualOracle) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int trial = 0; trial < 15; ++trial) {
    const int n = 2 + trial % 7;
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
    std::vector<WeightedEdge> edges;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (unif(rng) < 0.6) {
          w(i, j) = w(j, i) = 2.0 * unif(rng);
          edges.push_back({i, j, w(i, j)});
        }
      }
    }
    const Eigen::VectorXd g = oracle::RandomVector(rng, n, 2.0);
    const Eigen::VectorXd ours = GraphTvProx(n, edges, g);
    const Eigen::VectorXd ref = oracle::TvProxDual(w, g);
    EXPECT_LT((ours - ref).lpNorm<Eigen::Infinity>(), 1e-6) << "trial " << trial;
  }
}

TEST(TvProxTest, PriorProxUsesScaledWeights) {
  std::mt19937_64 rng(32);
  const Eigen::MatrixXd A = oracle::RandomPrior(rng, 6, 1.0, true);
  const Eigen::VectorXd b = oracle::RandomVector(rng, 6);
  const TvProxResult r = SolveTvProx(A, b);
  EXPECT_LT((r.u_star - oracle::TvProxDual(-4.0 * A, 2.0 * b)).lpNorm<Eigen::Infinity>(),
            1e-6);
  for (std::size_t i = 1; i < r.breakpoints.size(); ++i) {
    EXPECT_GT(r.breakpoints[i - 1], r.breakpoints[i]);
  }
}

TEST(TvProxTest, LevelSetsSolvePenalizedProblems) {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 3 + trial % 8;
    const Eigen::MatrixXd A = oracle::RandomPrior(rng, n, 1.0, true);
    const Eigen::VectorXd b = oracle::RandomVector(rng, n);
    const TvProxResult r = SolveTvProx(A, b);
    for (double theta : r.breakpoints) {
      // Level set at theta maximizes f(u) - theta * #positives.
      const Labeling s = ThresholdLabeling(r.u_star, theta);
      const Eigen::VectorXd shifted = b - 0.5 * theta * Eigen::VectorXd::Ones(n);
      const double penalized =
          oracle::Objective(A, shifted, s.ToVector()) - 0.5 * theta * n;
      const double best = oracle::BruteForceMax(A, shifted).value - 0.5 * theta * n;
      EXPECT_NEAR(penalized, best, 1e-7) << "trial " << trial << " theta " << theta;
    }
  }
}

TEST(CardinalityDecodeTest, UnflaggedSolutionsAreOptimal) {
  std::mt19937_64 rng(34);
  int flagged = 0, total = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const int n = 2 + trial % 11;
    const int k = trial % (n + 1);
    const Eigen::MatrixXd A = oracle::RandomPrior(rng, n, 0.5, true);
    const Eigen::VectorXd b = oracle::RandomVector(rng, n);
    const DecodeSolution s =
        CardinalityDecodeNonPositive(QboProblem(A, b, CardinalityConstraint(n, k)));
    const double exact = oracle::BruteForceMaxCardinality(A, b, k).value;
    EXPECT_EQ(s.rounded.CountPositive(), k);
    EXPECT_LE(s.rounded_value, exact + 1e-9);
    ++total;
    if (s.approximate) {
      ++flagged;
      EXPECT_GE(s.relaxation_value, exact - 1e-7);
    } else {
      EXPECT_NEAR(s.rounded_value, exact, 1e-9) << "trial " << trial;
    }
  }
  EXPECT_LT(flagged, total);
}

TEST(CardinalityDecodeTest, EdgeCardinalities) {
  std::mt19937_64 rng(35);
  const Eigen::MatrixXd A = oracle::RandomPrior(rng, 5, 1.0, true);
  const Eigen::VectorXd b = oracle::RandomVector(rng, 5);
  EXPECT_EQ(CardinalityDecodeNonPositive(QboProblem(A, b, CardinalityConstraint(5, 0)))
                .rounded,
            Labeling::AllNegative(5));
  EXPECT_EQ(CardinalityDecodeNonPositive(QboProblem(A, b, CardinalityConstraint(5, 5)))
                .rounded,
            Labeling::AllPositive(5));
  EXPECT_THROW(CardinalityDecodeNonPositive(QboProblem(A, b)), InvalidArgument);
  EXPECT_THROW(CardinalityDecodeNonPositive(QboProblem(-A, b, CardinalityConstraint(5, 2))),
               InvalidArgument);
}

TEST(CardinalityDecodeTest, GreedyRepairReachesTarget) {
  std::mt19937_64 rng(36);
  const Eigen::MatrixXd A = oracle::RandomPrior(rng, 8, 1.0, false);
  const QboProblem p(A, oracle::RandomVector(rng, 8));
  for (int k = 0; k <= 8; ++k) {
    EXPECT_EQ(GreedyCardinalityRepair(p, Labeling::FromCode(0b1011, 8), k).CountPositive(), k);
  }
}

}  // namespace
}  // namespace mlprior
