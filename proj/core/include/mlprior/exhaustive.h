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

#ifndef MLPRIOR_EXHAUSTIVE_H_
#define MLPRIOR_EXHAUSTIVE_H_

#include <vector>

#include "mlprior/qbo.h"

namespace mlprior {

inline constexpr int kMaxExhaustiveLabels = 25;

// Exact maximizer by enumerating {-1,1}^V (restricted to the constraint set
// when present). Ties go to the labeling with the smallest code, where bit i
// of the code is set iff entry i is +1.
DecodeSolution ExhaustiveDecode(const QboProblem& problem);

// One enumeration for the whole family
//   max u^T (b + coeff[k] d) - u^T A u  over u with exactly k positives,
// k = 0..V. Entry k is the solution of that problem, carrying the
// cardinality constraint. `problem` must be unconstrained.
std::vector<DecodeSolution> ExhaustiveDecodeByCardinality(
    const QboProblem& problem, const Eigen::VectorXd& direction,
    const std::vector<double>& coeff);

}  // namespace mlprior

#endif  // MLPRIOR_EXHAUSTIVE_H_
