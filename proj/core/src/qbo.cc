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

#include "mlprior/qbo.h"

#include <cmath>
#include <string>

#include "mlprior/errors.h"

namespace mlprior {

std::optional<int> AffineConstraint::Cardinality() const {
  const Eigen::Index v = alpha.size();
  if (v == 0 || (alpha.array() != 1.0).any()) return std::nullopt;
  const double k = (beta + static_cast<double>(v)) / 2.0;
  if (k != std::floor(k) || k < 0 || k > static_cast<double>(v)) {
    return std::nullopt;
  }
  return static_cast<int>(k);
}

bool AffineConstraint::SatisfiedBy(const Labeling& u) const {
  if (u.size() != alpha.size()) throw DimensionError("constraint length mismatch");
  if (auto k = Cardinality()) return u.CountPositive() == *k;
  const double lhs = alpha.dot(u.ToVector());
  const double scale = alpha.lpNorm<1>() + std::abs(beta) + 1.0;
  return std::abs(lhs - beta) <= 1e-9 * scale;
}

AffineConstraint CardinalityConstraint(int num_labels, int k) {
  if (k < 0 || k > num_labels) {
    throw InvalidArgument("cardinality " + std::to_string(k) +
                          " outside [0, " + std::to_string(num_labels) + "]");
  }
  return {Eigen::VectorXd::Ones(num_labels), 2.0 * k - num_labels};
}

QboProblem::QboProblem(Eigen::MatrixXd A, Eigen::VectorXd b,
                       std::optional<AffineConstraint> constraint)
    : A_(std::move(A)), b_(std::move(b)), constraint_(std::move(constraint)) {
  const Eigen::Index v = b_.size();
  if (v == 0) throw InvalidArgument("empty problem");
  if (A_.rows() != v || A_.cols() != v) {
    throw DimensionError("quadratic term must be " + std::to_string(v) + "x" +
                         std::to_string(v));
  }
  if (!A_.allFinite() || !b_.allFinite()) {
    throw InvalidArgument("non-finite problem data");
  }
  if (A_ != A_.transpose()) throw InvalidArgument("quadratic term not symmetric");
  if ((A_.diagonal().array() != 0.0).any()) {
    throw InvalidArgument("quadratic term must have a zero diagonal");
  }
  if (constraint_) {
    if (constraint_->alpha.size() != v) {
      throw DimensionError("constraint row has wrong length");
    }
    if (!constraint_->alpha.allFinite() || !std::isfinite(constraint_->beta)) {
      throw InvalidArgument("non-finite constraint");
    }
  }
}

QboProblem QboProblem::FromAnyMatrix(const Eigen::MatrixXd& A,
                                     Eigen::VectorXd b,
                                     std::optional<AffineConstraint> constraint) {
  Eigen::MatrixXd sym = 0.5 * (A + A.transpose());
  sym.diagonal().setZero();
  return QboProblem(std::move(sym), std::move(b), std::move(constraint));
}

QboProblem QboProblem::WithConstraint(
    std::optional<AffineConstraint> constraint) const {
  return QboProblem(A_, b_, std::move(constraint));
}

double QboProblem::Objective(const Labeling& u) const {
  if (u.size() != size()) throw DimensionError("labeling length mismatch");
  return Objective(u.ToVector());
}

double QboProblem::Objective(const Eigen::VectorXd& u) const {
  if (u.size() != size()) throw DimensionError("vector length mismatch");
  return u.dot(b_) - u.dot(A_ * u);
}

double QboProblem::LiftedObjective(const Eigen::VectorXd& u,
                                   const Eigen::MatrixXd& U) const {
  return u.dot(b_) - (A_.array() * U.array()).sum();
}

bool QboProblem::OffDiagonalNonPositive() const {
  return (A_.array() <= 0.0).all();
}

bool QboProblem::IsFeasible(const Labeling& u) const {
  return !constraint_ || constraint_->SatisfiedBy(u);
}

std::string_view ToString(SolverTag tag) {
  switch (tag) {
    case SolverTag::kExhaustive:
      return "exhaustive";
    case SolverTag::kMinCut:
      return "mincut";
    case SolverTag::kCardinalityTv:
      return "cardinality-tv";
    case SolverTag::kSdp:
      return "sdp";
    case SolverTag::kSpectral:
      return "spectral";
    case SolverTag::kSpectralQr:
      return "spectral-qr";
  }
  return "unknown";
}

DecodeSolution IntegralSolution(const QboProblem& problem, Labeling u,
                                SolverTag tag) {
  DecodeSolution s;
  s.relaxed_u = u.ToVector();
  s.relaxed_U = s.relaxed_u * s.relaxed_u.transpose();
  s.rounded_value = problem.Objective(u);
  s.relaxation_value = s.rounded_value;
  s.rounded = std::move(u);
  s.solver = tag;
  return s;
}

}  // namespace mlprior
