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

#ifndef MLPRIOR_MODEL_H_
#define MLPRIOR_MODEL_H_

#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "mlprior/labeling.h"
#include "mlprior/qbo.h"

namespace mlprior {

// Admissible sign pattern for the off-diagonal entries of the label prior.
enum class SignConstraint { kAny, kNonNegative, kNonPositive, kZero };

std::string_view ToString(SignConstraint s);
SignConstraint ParseSignConstraint(std::string_view text);

// Per-label classifiers W (d x V), label bias b and the quadratic label
// prior A (V x V, symmetric, zero diagonal, sign-constrained).
struct ModelParams {
  Eigen::MatrixXd W;
  Eigen::VectorXd b;
  Eigen::MatrixXd A;
  SignConstraint sign = SignConstraint::kAny;

  static ModelParams Zero(int dim, int num_labels,
                          SignConstraint sign = SignConstraint::kAny);

  int dim() const { return static_cast<int>(W.rows()); }
  int num_labels() const { return static_cast<int>(b.size()); }

  // Throws InvalidArgument/DimensionError if an invariant is broken.
  void Validate() const;

  friend bool operator==(const ModelParams& x, const ModelParams& y) {
    return x.sign == y.sign && x.W == y.W && x.b == y.b && x.A == y.A;
  }
};

// Symmetrizes, zeroes the diagonal and clips to the sign orthant. Idempotent.
void ProjectPrior(SignConstraint sign, Eigen::MatrixXd* A);

// D(x, y) = y^T W^T x + y^T b - y^T A y.
double Discriminant(const FeatureVector& x, const Labeling& y,
                    const ModelParams& params);

// The decoding problem for x: linear term W^T x + b, quadratic term A.
QboProblem CanonicalFromDecode(const FeatureVector& x,
                               const ModelParams& params);

}  // namespace mlprior

#endif  // MLPRIOR_MODEL_H_
