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

#ifndef MLPRIOR_TRAINER_H_
#define MLPRIOR_TRAINER_H_

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "mlprior/decoder.h"
#include "mlprior/labeling.h"
#include "mlprior/losses.h"
#include "mlprior/model.h"

namespace mlprior {

struct TrainConfig {
  double lambda_W = 1e-3;
  double lambda_A = 1e-3;
  LossKind loss = LossKind::Hamming();
  DecoderKind decoder = DecoderKind::kAuto;
  SignConstraint sign = SignConstraint::kAny;
  int epochs = 20;
  int batch_size = 1;
  double step0 = 1.0;
  std::uint64_t seed = 0;
  int threads = 1;
  // Solver knobs; `kind` is overridden by `decoder`.
  DecoderOptions decoder_options;
  // Return the running average of the iterates instead of the last one.
  bool average_iterates = true;

  void Validate(int num_labels) const;
  DecoderOptions ResolvedDecoder(int num_labels) const;
};

// Feature/label pairs; both spans must have the same length.
struct ExampleSet {
  std::span<const FeatureVector> x;
  std::span<const Labeling> y;
  int dim = 0;
  int num_labels = 0;

  int size() const { return static_cast<int>(x.size()); }
};

// One cardinality branch of the F-score loss-augmented problem: the loss is
// constant + slope * y^T y_ref on labelings with k positives.
struct CardinalityBranch {
  int k = 0;
  double constant = 0.0;
  double slope = 0.0;
  double value = 0.0;
};

struct LossAugmentedResult {
  Eigen::VectorXd u;
  Eigen::MatrixXd U;
  // max over the (relaxed) feasible set of loss + discriminant.
  double value = 0.0;
  Labeling labeling;
  std::vector<CardinalityBranch> branches;  // F-score losses only
  int chosen_k = -1;
  bool approximate = false;
};

// (constant, slope) for each k = 0..V, given the reference labeling.
std::vector<CardinalityBranch> FScoreBranches(const LossKind& kind,
                                              const Labeling& y_ref);

LossAugmentedResult LossAugmentedHamming(const FeatureVector& x,
                                         const Labeling& y_ref,
                                         const ModelParams& params,
                                         const DecoderOptions& options,
                                         std::uint64_t seed = 0);

// Handles F1 and F-beta by maximizing each cardinality branch separately.
LossAugmentedResult LossAugmentedFScore(const FeatureVector& x,
                                        const Labeling& y_ref,
                                        const ModelParams& params,
                                        const LossKind& kind,
                                        const DecoderOptions& options,
                                        std::uint64_t seed = 0);

LossAugmentedResult LossAugmented(const FeatureVector& x, const Labeling& y_ref,
                                  const ModelParams& params, const LossKind& kind,
                                  const DecoderOptions& options,
                                  std::uint64_t seed = 0);

// Structural hinge max(0, value - D(x, y_ref)) for a decoded result.
double Hinge(const LossAugmentedResult& r, const FeatureVector& x,
             const Labeling& y_ref, const ModelParams& params);

struct Subgradient {
  Eigen::MatrixXd W;
  Eigen::VectorXd b;
  Eigen::MatrixXd A;
  double objective = 0.0;  // at the point where it was taken
};

// Regularized objective and a subgradient over `indices` of `data`.
// Decodes run on cfg.threads workers; accumulation is in index order.
Subgradient ComputeSubgradient(const ExampleSet& data,
                               std::span<const int> indices,
                               const ModelParams& params, const TrainConfig& cfg,
                               std::uint64_t step);

// One projected step of size eta.
ModelParams SubgradientStep(const ExampleSet& data, std::span<const int> indices,
                            const ModelParams& params, const TrainConfig& cfg,
                            std::uint64_t step, double eta);

double ObjectiveEval(const ExampleSet& data, const ModelParams& params,
                     const TrainConfig& cfg);

struct TrainResult {
  ModelParams params;
  // Mean regularized hinge seen along each epoch.
  std::vector<double> epoch_objective;
  std::uint64_t steps = 0;
};

TrainResult Train(const ExampleSet& data, const TrainConfig& cfg,
                  const ModelParams* warm_start = nullptr);

// argmax_y D(x, y) with the given decoder.
Labeling Predict(const FeatureVector& x, const ModelParams& params,
                 const DecoderOptions& options, std::uint64_t seed = 0);

std::vector<Labeling> PredictAll(std::span<const FeatureVector> x,
                                 const ModelParams& params,
                                 const DecoderOptions& options, int threads,
                                 std::uint64_t seed = 0);

}  // namespace mlprior

#endif  // MLPRIOR_TRAINER_H_
