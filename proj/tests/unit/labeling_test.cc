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
#include "mlprior/labeling.h"
#include "mlprior/losses.h"
#include "oracles.h"

namespace mlprior {
namespace {

TEST(LabelingTest, CodeRoundTrip) {
  for (std::uint64_t code = 0; code < 64; ++code) {
    const Labeling y = Labeling::FromCode(code, 6);
    EXPECT_EQ(y.Code(), code);
    EXPECT_EQ(y.ToVector(), oracle::SignsFromCode(code, 6));
  }
}

TEST(LabelingTest, SignOfZeroIsPositive) {
  const Labeling y = Labeling::FromSigns(Eigen::Vector3d(0.0, -1e-300, 2.0));
  EXPECT_EQ(y[0], 1);
  EXPECT_EQ(y[1], -1);
  EXPECT_EQ(y[2], 1);
  EXPECT_EQ(y.CountPositive(), 2);
  EXPECT_EQ(y.Sum(), 1);
}

TEST(LabelingTest, RejectsNonSignEntries) {
  EXPECT_THROW(Labeling(std::vector<std::int8_t>{1, 0, -1}), InvalidArgument);
}

TEST(FeatureVectorTest, DenseRoundTripAndDuplicates) {
  const Eigen::Vector4d x(0.0, 1.5, 0.0, -2.0);
  const FeatureVector f = FeatureVector::FromDense(x);
  EXPECT_EQ(f.entries().size(), 2u);
  EXPECT_EQ(f.ToDense(), Eigen::VectorXd(x));
  EXPECT_THROW(FeatureVector(4, {{1, 1.0}, {1, 2.0}}), InputError);
  EXPECT_THROW(FeatureVector(4, {{4, 1.0}}), InputError);
}

TEST(FeatureVectorTest, TransposeTimesMatchesDense) {
  std::mt19937_64 rng(3);
  const Eigen::MatrixXd W = Eigen::MatrixXd::Random(5, 3);
  const Eigen::VectorXd x = oracle::RandomVector(rng, 5);
  EXPECT_TRUE(TransposeTimes(W, FeatureVector::FromDense(x)).isApprox(W.transpose() * x));
}

TEST(LossTest, MatchesCountFormulas) {
  for (int n = 1; n <= 6; ++n) {
    for (std::uint64_t a = 0; a < (1u << n); ++a) {
      for (std::uint64_t r = 0; r < (1u << n); ++r) {
        const Labeling y = Labeling::FromCode(a, n), ref = Labeling::FromCode(r, n);
        EXPECT_NEAR(Loss(LossKind::F1(), y, ref),
                    oracle::F1LossFromCounts(y.ToVector(), ref.ToVector()), 1e-12);
        EXPECT_NEAR(Loss(LossKind::Hamming(), y, ref),
                    oracle::HammingFromCounts(y.ToVector(), ref.ToVector()), 1e-12);
        EXPECT_NEAR(Loss(LossKind::FBeta(1.0), y, ref), Loss(LossKind::F1(), y, ref),
                    1e-12);
        EXPECT_NEAR(Accuracy(y, ref), 1.0 - HammingLoss(y, ref), 1e-12);
      }
    }
  }
}

TEST(LossTest, EmptyPredictionsConventions) {
  const Labeling none = Labeling::AllNegative(4);
  EXPECT_EQ(Loss(LossKind::F1(), none, none), 0.0);
  EXPECT_EQ(Loss(LossKind::FBeta(2.0), none, none), 0.0);
  const Labeling some = Labeling::FromCode(1, 4);
  EXPECT_EQ(Loss(LossKind::F1(), none, some), 1.0);
  EXPECT_EQ(Loss(LossKind::FBeta(0.5), some, none), 1.0);
}

TEST(LossTest, FBetaWeighsRecall) {
  // Two true labels, one predicted correctly: p = 1, r = 1/2.
  const Labeling ref = Labeling::FromCode(0b11, 4), y = Labeling::FromCode(0b01, 4);
  const double b2 = 4.0;
  EXPECT_NEAR(Loss(LossKind::FBeta(2.0), y, ref), 1.0 - (1 + b2) * 0.5 / (b2 + 0.5),
              1e-12);
}

TEST(LossTest, ParseAndPrint) {
  EXPECT_EQ(LossKind::Parse("f1"), LossKind::F1());
  EXPECT_EQ(LossKind::Parse("hamming"), LossKind::Hamming());
  EXPECT_EQ(LossKind::Parse("fbeta:2").beta(), 2.0);
  EXPECT_THROW(LossKind::Parse("fbeta:-1"), InvalidArgument);
  EXPECT_THROW(LossKind::Parse("zero-one"), InvalidArgument);
  EXPECT_THROW(Loss(LossKind::F1(), Labeling::AllNegative(2), Labeling::AllNegative(3)),
               DimensionError);
}

}  // namespace
}  // namespace mlprior
