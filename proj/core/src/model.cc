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

#include "mlprior/model.h"

#include <string>

#include "mlprior/errors.h"

namespace mlprior {

std::string_view ToString(SignConstraint s) {
  switch (s) {
    case SignConstraint::kAny:
      return "any";
    case SignConstraint::kNonNegative:
      return "nonneg";
    case SignConstraint::kNonPositive:
      return "nonpos";
    case SignConstraint::kZero:
      return "zero";
  }
  return "unknown";
}

SignConstraint ParseSignConstraint(std::string_view text) {
  if (text == "any") return SignConstraint::kAny;
  if (text == "nonneg") return SignConstraint::kNonNegative;
  if (text == "nonpos") return SignConstraint::kNonPositive;
  if (text == "zero") return SignConstraint::kZero;
  throw InvalidArgument("unknown sign constraint '" + std::string(text) + "'");
}

ModelParams ModelParams::Zero(int dim, int num_labels, SignConstraint sign) {
  if (dim < 0 || num_labels <= 0) throw InvalidArgument("bad model dimensions");
  ModelParams p;
  p.W = Eigen::MatrixXd::Zero(dim, num_labels);
  p.b = Eigen::VectorXd::Zero(num_labels);
  p.A = Eigen::MatrixXd::Zero(num_labels, num_labels);
  p.sign = sign;
  return p;
}

void ModelParams::Validate() const {
  const Eigen::Index v = b.size();
  if (W.cols() != v || A.rows() != v || A.cols() != v) {
    throw DimensionError("model blocks disagree on the label count");
  }
  if (!W.allFinite() || !b.allFinite() || !A.allFinite()) {
    throw InvalidArgument("model has non-finite entries");
  }
  if (A != A.transpose()) throw InvalidArgument("prior matrix not symmetric");
  if ((A.diagonal().array() != 0.0).any()) {
    throw InvalidArgument("prior matrix has a nonzero diagonal");
  }
  switch (sign) {
    case SignConstraint::kAny:
      break;
    case SignConstraint::kNonNegative:
      if ((A.array() < 0.0).any()) throw InvalidArgument("prior violates A >= 0");
      break;
    case SignConstraint::kNonPositive:
      if ((A.array() > 0.0).any()) throw InvalidArgument("prior violates A <= 0");
      break;
    case SignConstraint::kZero:
      if ((A.array() != 0.0).any()) throw InvalidArgument("prior must be zero");
      break;
  }
}

void ProjectPrior(SignConstraint sign, Eigen::MatrixXd* A) {
  Eigen::MatrixXd& m = *A;
  const Eigen::Index v = m.rows();
  for (Eigen::Index i = 0; i < v; ++i) {
    m(i, i) = 0.0;
    for (Eigen::Index j = i + 1; j < v; ++j) {
      double s = 0.5 * (m(i, j) + m(j, i));
      switch (sign) {
        case SignConstraint::kAny:
          break;
        case SignConstraint::kNonNegative:
          s = s < 0.0 ? 0.0 : s;
          break;
        case SignConstraint::kNonPositive:
          s = s > 0.0 ? 0.0 : s;
          break;
        case SignConstraint::kZero:
          s = 0.0;
          break;
      }
      m(i, j) = s;
      m(j, i) = s;
    }
  }
}

double Discriminant(const FeatureVector& x, const Labeling& y,
                    const ModelParams& params) {
  if (y.size() != params.num_labels()) {
    throw DimensionError("labeling length does not match the model");
  }
  const Eigen::VectorXd scores = TransposeTimes(params.W, x);
  const Eigen::VectorXd u = y.ToVector();
  return u.dot(scores) + u.dot(params.b) - u.dot(params.A * u);
}

QboProblem CanonicalFromDecode(const FeatureVector& x,
                               const ModelParams& params) {
  Eigen::VectorXd linear = TransposeTimes(params.W, x);
  if (params.b.size() != linear.size()) {
    throw DimensionError("bias length does not match the model");
  }
  linear += params.b;
  return QboProblem::FromAnyMatrix(params.A, std::move(linear));
}

}  // namespace mlprior
