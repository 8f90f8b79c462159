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

#ifndef MLPRIOR_QBO_H_
#define MLPRIOR_QBO_H_

#include <optional>
#include <string_view>

#include <Eigen/Dense>

#include "mlprior/labeling.h"

namespace mlprior {

// The affine row u^T alpha = beta attached to a QboProblem.
struct AffineConstraint {
  Eigen::VectorXd alpha;
  double beta = 0.0;

  // k when alpha is the all-ones vector and beta = 2k - V for an integer
  // k in [0, V]; nullopt otherwise.
  std::optional<int> Cardinality() const;
  bool SatisfiedBy(const Labeling& u) const;
};

// u^T 1 = 2k - V: exactly k positive entries.
AffineConstraint CardinalityConstraint(int num_labels, int k);

// Quadratic binary problem: maximize u^T b - u^T A u over u in {-1,1}^V,
// optionally subject to one affine row. A is exactly symmetric with a zero
// diagonal.
class QboProblem {
 public:
  QboProblem(Eigen::MatrixXd A, Eigen::VectorXd b,
             std::optional<AffineConstraint> constraint = std::nullopt);

  // Replaces A by its symmetric part and drops the diagonal, which is a
  // constant on {-1,1}^V.
  static QboProblem FromAnyMatrix(const Eigen::MatrixXd& A, Eigen::VectorXd b,
                                  std::optional<AffineConstraint> constraint =
                                      std::nullopt);

  int size() const { return static_cast<int>(b_.size()); }
  const Eigen::MatrixXd& A() const { return A_; }
  const Eigen::VectorXd& b() const { return b_; }
  const std::optional<AffineConstraint>& constraint() const {
    return constraint_;
  }

  QboProblem WithConstraint(std::optional<AffineConstraint> constraint) const;

  double Objective(const Labeling& u) const;
  double Objective(const Eigen::VectorXd& u) const;
  // Lifted objective u^T b - <A, U>.
  double LiftedObjective(const Eigen::VectorXd& u,
                         const Eigen::MatrixXd& U) const;

  bool OffDiagonalNonPositive() const;
  bool IsFeasible(const Labeling& u) const;

 private:
  Eigen::MatrixXd A_;
  Eigen::VectorXd b_;
  std::optional<AffineConstraint> constraint_;
};

enum class SolverTag {
  kExhaustive,
  kMinCut,
  kCardinalityTv,
  kSdp,
  kSpectral,
  kSpectralQr,
};

std::string_view ToString(SolverTag tag);

struct DecodeSolution {
  Eigen::VectorXd relaxed_u;
  std::optional<Eigen::MatrixXd> relaxed_U;
  // Value of the relaxation; an upper bound on the discrete maximum for the
  // relaxation solvers.
  double relaxation_value = 0.0;
  Labeling rounded;
  // Recomputed from `rounded`.
  double rounded_value = 0.0;
  SolverTag solver = SolverTag::kExhaustive;
  // Set when a combinatorial solver could not certify optimality.
  bool approximate = false;
};

// Builds a solution whose relaxed iterate is the labeling itself.
DecodeSolution IntegralSolution(const QboProblem& problem, Labeling u,
                                SolverTag tag);

}  // namespace mlprior

#endif  // MLPRIOR_QBO_H_
