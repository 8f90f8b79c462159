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

#ifndef MLPRIOR_LOSSES_H_
#define MLPRIOR_LOSSES_H_

#include <string>
#include <utility>

#include "mlprior/labeling.h"

namespace mlprior {

class LossKind {
 public:
  enum class Type { kHamming, kF1, kFBeta };

  static LossKind Hamming() { return LossKind(Type::kHamming, 1.0); }
  static LossKind F1() { return LossKind(Type::kF1, 1.0); }
  static LossKind FBeta(double beta);
  // Accepts "hamming", "f1" and "fbeta:<beta>".
  static LossKind Parse(const std::string& text);

  Type type() const { return type_; }
  double beta() const { return beta_; }
  std::string ToString() const;

  friend bool operator==(const LossKind&, const LossKind&) = default;

 private:
  LossKind(Type type, double beta) : type_(type), beta_(beta) {}
  Type type_;
  double beta_;
};

double Accuracy(const Labeling& y, const Labeling& y_ref);
double HammingLoss(const Labeling& y, const Labeling& y_ref);

// Precision and recall of y against y_ref. An empty prediction has precision
// 0; an empty reference has recall 0 unless the prediction is empty too, in
// which case both are 1.
std::pair<double, double> PrecisionRecall(const Labeling& y,
                                          const Labeling& y_ref);

// 1 - F_beta. F1 uses the closed form (V - y'y_ref) / (2V + y_ref'1 + y'1),
// which is 0 when both labelings are all -1.
double Loss(const LossKind& kind, const Labeling& y, const Labeling& y_ref);

}  // namespace mlprior

#endif  // MLPRIOR_LOSSES_H_
