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

#ifndef MLPRIOR_CARDINALITY_DECODER_H_
#define MLPRIOR_CARDINALITY_DECODER_H_

#include "mlprior/qbo.h"
#include "mlprior/tv_prox.h"

namespace mlprior {

// Maximizes u^T b - u^T A u over labelings with exactly k positive entries,
// for A with non-positive off-diagonal entries.
//
// The level sets of the TV-prox solution are exact maximizers for every
// cardinality they attain. A cardinality that falls strictly inside a level
// is reached by greedy single flips from the neighbouring level sets; the
// result is then checked against the Lagrangian bound and flagged
// `approximate` only if the bound does not certify it. relaxation_value is
// that bound in the flagged case.
DecodeSolution CardinalityDecodeNonPositive(const QboProblem& problem);

// Greedy single-entry flips towards exactly k positive entries, each time
// taking the flip with the largest objective (lowest index on ties).
Labeling GreedyCardinalityRepair(const QboProblem& problem, Labeling start,
                                 int k);

}  // namespace mlprior

#endif  // MLPRIOR_CARDINALITY_DECODER_H_
