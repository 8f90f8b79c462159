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

#include "mlprior/trainer.h"

#include <cmath>
#include <sstream>
#include <string>

#include "mlprior/errors.h"
#include "mlprior/exhaustive.h"
#include "mlprior/random.h"
#include "parallel.h"

namespace mlprior {
namespace {

bool IsCombinatorial(DecoderKind kind) {
  return kind == DecoderKind::kExhaustive || kind == DecoderKind::kMinCut;
}

void CheckExample(const FeatureVector& x, const Labeling& y,
                  const ModelParams& params) {
  if (x.dim() != params.dim()) {
    throw DimensionError("feature dimension " + std::to_string(x.dim()) +
                         " does not match the model (" +
                         std::to_string(params.dim()) + ")");
  }
  if (y.size() != params.num_labels()) {
    throw DimensionError("labeling length does not match the model");
  }
}

DecoderOptions Resolve(const DecoderOptions& options, const ModelParams& params) {
  DecoderOptions out = options;
  out.kind = ResolveDecoder(options.kind, params.num_labels(), params.sign,
                            options.auto_exhaustive_labels);
  return out;
}

// Fills u, U and value from a decoded branch; `offset` is the constant part
// of the loss.
void Absorb(const DecodeSolution& sol, DecoderKind kind, double offset,
            LossAugmentedResult* out) {
  if (IsCombinatorial(kind)) {
    out->u = sol.rounded.ToVector();
    out->value = offset + sol.rounded_value;
  } else {
    out->u = sol.relaxed_u;
    out->value = offset + sol.relaxation_value;
  }
  out->U = sol.relaxed_U && !IsCombinatorial(kind)
               ? *sol.relaxed_U
               : Eigen::MatrixXd(out->u * out->u.transpose());
  out->labeling = sol.rounded;
  out->approximate = sol.approximate;
}

}  // namespace

void TrainConfig::Validate(int num_labels) const {
  if (!(lambda_W >= 0.0) || !(lambda_A >= 0.0) || !std::isfinite(lambda_W) ||
      !std::isfinite(lambda_A)) {
    throw InvalidArgument("regularization weights must be finite and >= 0");
  }
  if (!(step0 > 0.0) || !std::isfinite(step0)) {
    throw InvalidArgument("step0 must be positive");
  }
  if (epochs < 1 || batch_size < 1) {
    throw InvalidArgument("epochs and batch_size must be >= 1");
  }
  if (threads < 1) throw InvalidArgument("threads must be >= 1");
  if (!DecoderSupports(decoder, sign)) {
    throw InvalidArgument("decoder 'mincut' requires sign constraint nonpos or zero, got '" +
                          std::string(ToString(sign)) + "'");
  }
  const DecoderKind kind = ResolvedDecoder(num_labels).kind;
  if (kind == DecoderKind::kExhaustive && num_labels > kMaxExhaustiveLabels) {
    throw InvalidArgument("exhaustive decoding needs V <= " +
                          std::to_string(kMaxExhaustiveLabels));
  }
}

DecoderOptions TrainConfig::ResolvedDecoder(int num_labels) const {
  DecoderOptions out = decoder_options;
  out.kind = ResolveDecoder(decoder, num_labels, sign,
                            decoder_options.auto_exhaustive_labels);
  return out;
}

std::vector<CardinalityBranch> FScoreBranches(const LossKind& kind,
                                              const Labeling& y_ref) {
  if (kind.type() == LossKind::Type::kHamming) {
    throw InvalidArgument("cardinality branches are defined for F-score losses");
  }
  const int v = y_ref.size();
  const int p = y_ref.CountPositive();
  const double b2 = kind.beta() * kind.beta();
  std::vector<CardinalityBranch> out(v + 1);
  for (int k = 0; k <= v; ++k) {
    CardinalityBranch& br = out[k];
    br.k = k;
    if (p == 0 && k == 0) continue;  // both empty: zero loss
    if (kind.type() == LossKind::Type::kF1) {
      const double den = v + y_ref.Sum() + 2.0 * k;
      br.constant = v / den;
      br.slope = -1.0 / den;
    } else {
      // 1 - (1 + b^2) TP / (b^2 p + k), TP = (2k + 2p - V + y^T y_ref) / 4.
      const double den = 4.0 * (b2 * p + k);
      br.constant = 1.0 - (1.0 + b2) * (2.0 * k + 2.0 * p - v) / den;
      br.slope = -(1.0 + b2) / den;
    }
  }
  return out;
}

LossAugmentedResult LossAugmentedHamming(const FeatureVector& x,
                                         const Labeling& y_ref,
                                         const ModelParams& params,
                                         const DecoderOptions& options,
                                         std::uint64_t seed) {
  CheckExample(x, y_ref, params);
  const DecoderOptions opts = Resolve(options, params);
  const int v = params.num_labels();
  Eigen::VectorXd linear = TransposeTimes(params.W, x) + params.b;
  linear -= y_ref.ToVector() / (2.0 * v);
  const QboProblem problem = QboProblem::FromAnyMatrix(params.A, std::move(linear));
  LossAugmentedResult out;
  Absorb(Decode(problem, opts, seed), opts.kind, 0.5, &out);
  return out;
}

LossAugmentedResult LossAugmentedFScore(const FeatureVector& x,
                                        const Labeling& y_ref,
                                        const ModelParams& params,
                                        const LossKind& kind,
                                        const DecoderOptions& options,
                                        std::uint64_t seed) {
  CheckExample(x, y_ref, params);
  const DecoderOptions opts = Resolve(options, params);
  const int v = params.num_labels();
  const Eigen::VectorXd r = y_ref.ToVector();
  const QboProblem base = QboProblem::FromAnyMatrix(
      params.A, TransposeTimes(params.W, x) + params.b);
  std::vector<CardinalityBranch> branches = FScoreBranches(kind, y_ref);

  std::vector<DecodeSolution> sols;
  if (opts.kind == DecoderKind::kExhaustive) {
    std::vector<double> slopes(v + 1);
    for (int k = 0; k <= v; ++k) slopes[k] = branches[k].slope;
    sols = ExhaustiveDecodeByCardinality(base, r, slopes);
  } else {
    sols.reserve(v + 1);
    for (int k = 0; k <= v; ++k) {
      QboProblem pk(base.A(), base.b() + branches[k].slope * r,
                    CardinalityConstraint(v, k));
      if (k == 0 || k == v) {
        // Single feasible labeling.
        Labeling only = k == 0 ? Labeling::AllNegative(v) : Labeling::AllPositive(v);
        sols.push_back(IntegralSolution(pk, std::move(only), SolverTag::kExhaustive));
      } else {
        sols.push_back(Decode(pk, opts, DeriveSeed(seed, k)));
      }
    }
  }

  LossAugmentedResult out;
  int best = -1;
  for (int k = 0; k <= v; ++k) {
    const bool singleton = k == 0 || k == v;
    const DecodeSolution& s = sols[k];
    const double inner =
        singleton || IsCombinatorial(opts.kind) ? s.rounded_value : s.relaxation_value;
    branches[k].value = branches[k].constant + inner;
    if (best < 0 || branches[k].value > branches[best].value) best = k;
  }
  const bool singleton = best == 0 || best == v;
  Absorb(sols[best], singleton ? DecoderKind::kExhaustive : opts.kind,
         branches[best].constant, &out);
  out.branches = std::move(branches);
  out.chosen_k = best;
  return out;
}

LossAugmentedResult LossAugmented(const FeatureVector& x, const Labeling& y_ref,
                                  const ModelParams& params, const LossKind& kind,
                                  const DecoderOptions& options,
                                  std::uint64_t seed) {
  if (kind.type() == LossKind::Type::kHamming) {
    return LossAugmentedHamming(x, y_ref, params, options, seed);
  }
  return LossAugmentedFScore(x, y_ref, params, kind, options, seed);
}

double Hinge(const LossAugmentedResult& r, const FeatureVector& x,
             const Labeling& y_ref, const ModelParams& params) {
  return std::max(0.0, r.value - Discriminant(x, y_ref, params));
}

Subgradient ComputeSubgradient(const ExampleSet& data,
                               std::span<const int> indices,
                               const ModelParams& params, const TrainConfig& cfg,
                               std::uint64_t step) {
  if (indices.empty()) throw InvalidArgument("empty batch");
  const int n = static_cast<int>(indices.size());
  const int v = params.num_labels();
  const DecoderOptions opts = cfg.ResolvedDecoder(v);
  std::vector<LossAugmentedResult> results(n);
  std::vector<double> hinges(n);
  internal::ParallelFor(n, cfg.threads, [&](int j) {
    const int i = indices[j];
    results[j] = LossAugmented(data.x[i], data.y[i], params, cfg.loss, opts,
                               DeriveSeed(cfg.seed, step, i));
    hinges[j] = Hinge(results[j], data.x[i], data.y[i], params);
  });

  Subgradient g;
  g.W = Eigen::MatrixXd::Zero(params.dim(), v);
  g.b = Eigen::VectorXd::Zero(v);
  g.A = Eigen::MatrixXd::Zero(v, v);
  double hinge_sum = 0.0;
  for (int j = 0; j < n; ++j) {
    hinge_sum += hinges[j];
    if (hinges[j] <= 0.0) continue;
    const int i = indices[j];
    const Eigen::VectorXd y = data.y[i].ToVector();
    const Eigen::VectorXd diff = results[j].u - y;
    for (const FeatureEntry& e : data.x[i].entries()) {
      g.W.row(e.index) += e.value * diff.transpose();
    }
    g.b += diff;
    g.A += y * y.transpose() - results[j].U;
  }
  const double inv = 1.0 / n;
  g.W = g.W * inv + cfg.lambda_W * params.W;
  g.b *= inv;
  g.A = g.A * inv + cfg.lambda_A * params.A;
  g.objective = hinge_sum * inv + 0.5 * cfg.lambda_W * params.W.squaredNorm() +
                0.5 * cfg.lambda_A * params.A.squaredNorm();
  if (!g.W.allFinite() || !g.b.allFinite() || !g.A.allFinite() ||
      !std::isfinite(g.objective)) {
    std::ostringstream msg;
    msg << "non-finite subgradient at step " << step << " (objective "
        << g.objective << ", |W| " << params.W.norm() << ", |A| "
        << params.A.norm() << ")";
    throw SolverError(msg.str());
  }
  return g;
}

ModelParams SubgradientStep(const ExampleSet& data, std::span<const int> indices,
                            const ModelParams& params, const TrainConfig& cfg,
                            std::uint64_t step, double eta) {
  const Subgradient g = ComputeSubgradient(data, indices, params, cfg, step);
  ModelParams next = params;
  next.W -= eta * g.W;
  next.b -= eta * g.b;
  next.A -= eta * g.A;
  ProjectPrior(params.sign, &next.A);
  return next;
}

double ObjectiveEval(const ExampleSet& data, const ModelParams& params,
                     const TrainConfig& cfg) {
  if (data.size() == 0) throw InvalidArgument("empty example set");
  const int n = data.size();
  const DecoderOptions opts = cfg.ResolvedDecoder(params.num_labels());
  std::vector<double> hinges(n);
  internal::ParallelFor(n, cfg.threads, [&](int i) {
    const LossAugmentedResult r =
        LossAugmented(data.x[i], data.y[i], params, cfg.loss, opts,
                      DeriveSeed(cfg.seed, ~std::uint64_t{0}, i));
    hinges[i] = Hinge(r, data.x[i], data.y[i], params);
  });
  double sum = 0.0;
  for (double h : hinges) sum += h;
  return sum / n + 0.5 * cfg.lambda_W * params.W.squaredNorm() +
         0.5 * cfg.lambda_A * params.A.squaredNorm();
}

TrainResult Train(const ExampleSet& data, const TrainConfig& cfg,
                  const ModelParams* warm_start) {
  if (data.size() == 0) throw InvalidArgument("cannot train on an empty set");
  if (data.x.size() != data.y.size()) {
    throw DimensionError("features and labelings differ in count");
  }
  cfg.Validate(data.num_labels);
  ModelParams params = ModelParams::Zero(data.dim, data.num_labels, cfg.sign);
  if (warm_start != nullptr) {
    if (warm_start->dim() != data.dim || warm_start->num_labels() != data.num_labels) {
      throw DimensionError("warm start does not match the data");
    }
    params.W = warm_start->W;
    params.b = warm_start->b;
    params.A = warm_start->A;
    ProjectPrior(cfg.sign, &params.A);
  }

  TrainResult result;
  ModelParams avg = params;
  std::vector<int> order(data.size());
  for (int i = 0; i < data.size(); ++i) order[i] = i;
  std::mt19937_64 rng(DeriveSeed(cfg.seed, 0x7261696eULL));
  std::uint64_t t = 0;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    Shuffle(order, rng);
    double objective_sum = 0.0;
    for (int start = 0; start < data.size(); start += cfg.batch_size) {
      const int len = std::min(cfg.batch_size, data.size() - start);
      const std::span<const int> batch(order.data() + start, len);
      const double eta = cfg.step0 / (1.0 + cfg.step0 * cfg.lambda_W * static_cast<double>(t));
      const Subgradient g = ComputeSubgradient(data, batch, params, cfg, t);
      objective_sum += g.objective * len;
      params.W -= eta * g.W;
      params.b -= eta * g.b;
      params.A -= eta * g.A;
      ProjectPrior(cfg.sign, &params.A);
      ++t;
      const double w = 1.0 / static_cast<double>(t);
      avg.W += w * (params.W - avg.W);
      avg.b += w * (params.b - avg.b);
      avg.A += w * (params.A - avg.A);
    }
    result.epoch_objective.push_back(objective_sum / data.size());
  }
  if (cfg.average_iterates) {
    ProjectPrior(cfg.sign, &avg.A);
    result.params = std::move(avg);
  } else {
    result.params = std::move(params);
  }
  result.steps = t;
  return result;
}

Labeling Predict(const FeatureVector& x, const ModelParams& params,
                 const DecoderOptions& options, std::uint64_t seed) {
  if (x.dim() != params.dim()) {
    throw DimensionError("feature dimension " + std::to_string(x.dim()) +
                         " does not match the model (" +
                         std::to_string(params.dim()) + ")");
  }
  const DecoderOptions opts = Resolve(options, params);
  return Decode(CanonicalFromDecode(x, params), opts, seed).rounded;
}

std::vector<Labeling> PredictAll(std::span<const FeatureVector> x,
                                 const ModelParams& params,
                                 const DecoderOptions& options, int threads,
                                 std::uint64_t seed) {
  std::vector<Labeling> out(x.size());
  internal::ParallelFor(static_cast<int>(x.size()), threads, [&](int i) {
    out[i] = Predict(x[i], params, options, DeriveSeed(seed, i));
  });
  return out;
}

}  // namespace mlprior
