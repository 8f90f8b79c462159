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

#include "mlprior/losses.h"

#include <cmath>
#include <string>

#include "mlprior/errors.h"

namespace mlprior {
namespace {

void CheckLengths(const Labeling& y, const Labeling& y_ref) {
  if (y.size() != y_ref.size()) {
    throw DimensionError("labeling lengths differ: " + std::to_string(y.size()) +
                         " vs " + std::to_string(y_ref.size()));
  }
  if (y.size() == 0) throw InvalidArgument("empty labeling");
}

}  // namespace

LossKind LossKind::FBeta(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw InvalidArgument("F-beta requires beta > 0");
  }
  return LossKind(Type::kFBeta, beta);
}

LossKind LossKind::Parse(const std::string& text) {
  if (text == "hamming") return Hamming();
  if (text == "f1") return F1();
  const std::string prefix = "fbeta:";
  if (text.rfind(prefix, 0) == 0) {
    try {
      return FBeta(std::stod(text.substr(prefix.size())));
    } catch (const std::logic_error&) {
      throw InvalidArgument("bad beta in loss '" + text + "'");
    }
  }
  throw InvalidArgument("unknown loss '" + text + "'");
}

std::string LossKind::ToString() const {
  switch (type_) {
    case Type::kHamming:
      return "hamming";
    case Type::kF1:
      return "f1";
    case Type::kFBeta:
      return "fbeta:" + std::to_string(beta_);
  }
  return "unknown";
}

double Accuracy(const Labeling& y, const Labeling& y_ref) {
  CheckLengths(y, y_ref);
  const double v = y.size();
  return (v + y.Dot(y_ref)) / (2.0 * v);
}

double HammingLoss(const Labeling& y, const Labeling& y_ref) {
  CheckLengths(y, y_ref);
  const double v = y.size();
  return (v - y_ref.Dot(y)) / (2.0 * v);
}

std::pair<double, double> PrecisionRecall(const Labeling& y,
                                          const Labeling& y_ref) {
  CheckLengths(y, y_ref);
  int true_pos = 0;
  for (int i = 0; i < y.size(); ++i) true_pos += (y[i] > 0 && y_ref[i] > 0);
  const int predicted = y.CountPositive();
  const int relevant = y_ref.CountPositive();
  if (predicted == 0 && relevant == 0) return {1.0, 1.0};
  const double p = predicted == 0 ? 0.0 : double(true_pos) / predicted;
  const double r = relevant == 0 ? 0.0 : double(true_pos) / relevant;
  return {p, r};
}

double Loss(const LossKind& kind, const Labeling& y, const Labeling& y_ref) {
  CheckLengths(y, y_ref);
  switch (kind.type()) {
    case LossKind::Type::kHamming:
      return HammingLoss(y, y_ref);
    case LossKind::Type::kF1: {
      const double v = y.size();
      const double den = 2.0 * v + y_ref.Sum() + y.Sum();
      if (den == 0.0) return 0.0;  // both all -1
      return (v - y.Dot(y_ref)) / den;
    }
    case LossKind::Type::kFBeta: {
      if (y.CountPositive() == 0 && y_ref.CountPositive() == 0) return 0.0;
      const auto [p, r] = PrecisionRecall(y, y_ref);
      if (p == 0.0 && r == 0.0) return 1.0;
      const double b2 = kind.beta() * kind.beta();
      return 1.0 - (1.0 + b2) * p * r / (b2 * p + r);
    }
  }
  return 0.0;
}

}  // namespace mlprior
