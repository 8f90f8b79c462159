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

#include "mlprior/errors.h"
#include "mlprior/exhaustive.h"
#include "mlprior/qbo.h"
#include "oracles.h"

namespace mlprior {
namespace {

TEST(QboTest, ObjectiveMatchesOracle) {
  std::mt19937_64 rng(11);
  const Eigen::MatrixXd A = oracle::RandomPrior(rng, 7, 1.0, false);
  const Eigen::VectorXd b = oracle::RandomVector(rng, 7);
  const QboProblem p(A, b);
  for (std::uint64_t code = 0; code < 128; ++code) {
    EXPECT_NEAR(p.Objective(Labeling::FromCode(code, 7)),
                oracle::Objective(A, b, oracle::SignsFromCode(code, 7)), 1e-12);
  }
}

TEST(QboTest, FromAnyMatrixKeepsDiscreteObjective) {
  std::mt19937_64 rng(12);
  const Eigen::MatrixXd M = Eigen::MatrixXd::Random(5, 5);
  const Eigen::VectorXd b = oracle::RandomVector(rng, 5);
  const QboProblem p = QboProblem::FromAnyMatrix(M, b);
  EXPECT_TRUE(p.A().isApprox(p.A().transpose()));
  EXPECT_EQ(p.A().diagonal().norm(), 0.0);
  // The diagonal only shifts every labeling by trace(M).
  for (std::uint64_t code = 0; code < 32; ++code) {
    const Eigen::VectorXd u = oracle::SignsFromCode(code, 5);
    EXPECT_NEAR(p.Objective(u) - M.trace(), oracle::Objective(M, b, u), 1e-12);
  }
}

TEST(QboTest, RejectsBadInput) {
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(3, 3);
  A(0, 1) = 1.0;  // not symmetric
  EXPECT_THROW(QboProblem(A, Eigen::VectorXd::Zero(3)), InputError);
  EXPECT_THROW(QboProblem(Eigen::MatrixXd::Zero(3, 3), Eigen::VectorXd::Zero(2)),
               DimensionError);
  Eigen::MatrixXd diag = Eigen::MatrixXd::Identity(2, 2);
  EXPECT_THROW(QboProblem(diag, Eigen::VectorXd::Zero(2)), InputError);
}

TEST(QboTest, CardinalityConstraintRecognized) {
  const AffineConstraint c = CardinalityConstraint(6, 2);
  EXPECT_EQ(c.Cardinality(), 2);
  EXPECT_TRUE(c.SatisfiedBy(Labeling::FromCode(0b100100, 6)));
  EXPECT_FALSE(c.SatisfiedBy(Labeling::FromCode(0b100101, 6)));
  AffineConstraint general{Eigen::VectorXd::LinSpaced(6, 1, 2), 0.0};
  EXPECT_FALSE(general.Cardinality().has_value());
}

TEST(ExhaustiveTest, MatchesCountingEnumeration) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + trial % 10;
    const Eigen::MatrixXd A = oracle::RandomPrior(rng, n, 1.0, trial % 2 == 0);
    const Eigen::VectorXd b = oracle::RandomVector(rng, n);
    const DecodeSolution s = ExhaustiveDecode(QboProblem(A, b));
    const oracle::BruteResult ref = oracle::BruteForceMax(A, b);
    EXPECT_NEAR(s.rounded_value, ref.value, 1e-9);
    EXPECT_EQ(s.rounded.Code(), ref.code);
    EXPECT_FALSE(s.approximate);
  }
}

TEST(ExhaustiveTest, TiesGoToSmallestCode) {
  // b = 0 makes u and -u tie; the labeling with bit pattern of smaller
  // value must win.
  std::mt19937_64 rng(14);
  const Eigen::MatrixXd A = oracle::RandomPrior(rng, 6, 1.0, false);
  const DecodeSolution s = ExhaustiveDecode(QboProblem(A, Eigen::VectorXd::Zero(6)));
  const std::uint64_t mirror = (~s.rounded.Code()) & 63u;
  EXPECT_LT(s.rounded.Code(), mirror);
  EXPECT_EQ(ExhaustiveDecode(QboProblem(Eigen::MatrixXd::Zero(3, 3),
                                        Eigen::VectorXd::Zero(3)))
                .rounded.Code(),
            0u);
}

TEST(ExhaustiveTest, AffineAndCardinalityRows) {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + trial % 7;
    const int k = trial % (n + 1);
    const Eigen::MatrixXd A = oracle::RandomPrior(rng, n, 1.0, false);
    const Eigen::VectorXd b = oracle::RandomVector(rng, n);
    const DecodeSolution s = ExhaustiveDecode(QboProblem(A, b, CardinalityConstraint(n, k)));
    EXPECT_EQ(s.rounded.CountPositive(), k);
    EXPECT_NEAR(s.rounded_value, oracle::BruteForceMaxCardinality(A, b, k).value, 1e-9);

    // alpha with small integer entries so several labelings hit beta.
    Eigen::VectorXd alpha(n);
    for (int i = 0; i < n; ++i) alpha[i] = 1 + i % 3;
    const Eigen::VectorXd target = oracle::SignsFromCode(trial * 7 % (1 << n), n);
    const double beta = alpha.dot(target);
    const DecodeSolution g = ExhaustiveDecode(QboProblem(A, b, AffineConstraint{alpha, beta}));
    const oracle::BruteResult ref = oracle::BruteForceMax(
        A, b, [&](const Eigen::VectorXd& u) { return std::abs(alpha.dot(u) - beta) < 1e-9; });
    EXPECT_NEAR(g.rounded_value, ref.value, 1e-9);
  }
}

TEST(ExhaustiveTest, InfeasibleAndTooLarge) {
  const Eigen::VectorXd alpha = Eigen::VectorXd::Ones(3);
  EXPECT_THROW(ExhaustiveDecode(QboProblem(Eigen::MatrixXd::Zero(3, 3),
                                           Eigen::VectorXd::Zero(3),
                                           AffineConstraint{alpha, 0.5})),
               InvalidArgument);
  const int n = kMaxExhaustiveLabels + 1;
  EXPECT_THROW(ExhaustiveDecode(QboProblem(Eigen::MatrixXd::Zero(n, n),
                                           Eigen::VectorXd::Zero(n))),
               InvalidArgument);
}

TEST(ExhaustiveTest, PerCardinalityPassAgreesWithSeparateSolves) {
  std::mt19937_64 rng(16);
  const int n = 7;
  const Eigen::MatrixXd A = oracle::RandomPrior(rng, n, 1.0, false);
  const Eigen::VectorXd b = oracle::RandomVector(rng, n);
  const Eigen::VectorXd d = oracle::RandomVector(rng, n);
  std::vector<double> coeff(n + 1);
  for (int k = 0; k <= n; ++k) coeff[k] = 0.1 * k - 0.3;
  const auto per_k = ExhaustiveDecodeByCardinality(QboProblem(A, b), d, coeff);
  ASSERT_EQ(per_k.size(), std::size_t(n + 1));
  for (int k = 0; k <= n; ++k) {
    const Eigen::VectorXd bk = b + coeff[k] * d;
    EXPECT_EQ(per_k[k].rounded.CountPositive(), k);
    EXPECT_NEAR(per_k[k].rounded_value, oracle::BruteForceMaxCardinality(A, bk, k).value,
                1e-9);
  }
}

}  // namespace
}  // namespace mlprior
