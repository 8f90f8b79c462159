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

#include "mlprior/exhaustive.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <string>

#include "mlprior/errors.h"

namespace mlprior {
namespace {

// Incremental state is re-derived from scratch this often to bound drift.
constexpr std::uint64_t kResyncPeriod = std::uint64_t{1} << 14;

}  // namespace

DecodeSolution ExhaustiveDecode(const QboProblem& problem) {
  const int v = problem.size();
  if (v > kMaxExhaustiveLabels) {
    throw InvalidArgument("exhaustive decoding limited to V <= " +
                          std::to_string(kMaxExhaustiveLabels) + ", got " +
                          std::to_string(v));
  }
  const Eigen::MatrixXd& A = problem.A();
  const Eigen::VectorXd& b = problem.b();
  const auto& constraint = problem.constraint();
  const std::optional<int> cardinality =
      constraint ? constraint->Cardinality() : std::nullopt;

  const double scale = b.lpNorm<1>() + A.lpNorm<1>() + 1.0;
  const double tie_tol = 1e-12 * scale;
  double constraint_tol = 0.0;
  if (constraint) {
    constraint_tol =
        1e-9 * (constraint->alpha.lpNorm<1>() + std::abs(constraint->beta) + 1.0);
  }

  // Walk the Gray code; consecutive labelings differ in one entry, so the
  // objective, A u, and alpha^T u update in O(V).
  Eigen::VectorXd u = -Eigen::VectorXd::Ones(v);
  Eigen::VectorXd Au = A * u;
  double value = u.dot(b) - u.dot(Au);
  double alpha_u = constraint ? constraint->alpha.dot(u) : 0.0;
  int positives = 0;

  bool found = false;
  double best_value = 0.0;
  std::uint64_t best_code = 0;
  const std::uint64_t count = std::uint64_t{1} << v;
  for (std::uint64_t step = 0; step < count; ++step) {
    const std::uint64_t code = step ^ (step >> 1);
    if (step > 0) {
      const int i = std::countr_zero(step);
      const double ui = u[i];
      value += -2.0 * ui * b[i] + 4.0 * ui * Au[i];
      Au.noalias() -= (2.0 * ui) * A.col(i);
      if (constraint) alpha_u -= 2.0 * ui * constraint->alpha[i];
      positives += ui < 0 ? 1 : -1;
      u[i] = -ui;
      if (step % kResyncPeriod == 0) {
        Au.noalias() = A * u;
        value = u.dot(b) - u.dot(Au);
        if (constraint) alpha_u = constraint->alpha.dot(u);
      }
    }
    if (constraint) {
      const bool feasible = cardinality
                                ? positives == *cardinality
                                : std::abs(alpha_u - constraint->beta) <=
                                      constraint_tol;
      if (!feasible) continue;
    }
    if (!found || value > best_value + tie_tol ||
        (value >= best_value - tie_tol && code < best_code)) {
      if (!found || value > best_value) best_value = value;
      best_code = code;
      found = true;
    }
  }
  if (!found) throw InvalidArgument("constraint admits no labeling");
  return IntegralSolution(problem, Labeling::FromCode(best_code, v),
                          SolverTag::kExhaustive);
}

}  // namespace mlprior

namespace mlprior {

std::vector<DecodeSolution> ExhaustiveDecodeByCardinality(
    const QboProblem& problem, const Eigen::VectorXd& direction,
    const std::vector<double>& coeff) {
  const int v = problem.size();
  if (v > kMaxExhaustiveLabels) {
    throw InvalidArgument("exhaustive decoding limited to V <= " +
                          std::to_string(kMaxExhaustiveLabels) + ", got " +
                          std::to_string(v));
  }
  if (problem.constraint()) {
    throw InvalidArgument("per-cardinality enumeration takes an unconstrained problem");
  }
  if (direction.size() != v || static_cast<int>(coeff.size()) != v + 1) {
    throw DimensionError("per-cardinality enumeration: size mismatch");
  }
  const Eigen::MatrixXd& A = problem.A();
  const Eigen::VectorXd& b = problem.b();
  double max_coeff = 0.0;
  for (double c : coeff) max_coeff = std::max(max_coeff, std::abs(c));
  const double scale =
      b.lpNorm<1>() + A.lpNorm<1>() + max_coeff * direction.lpNorm<1>() + 1.0;
  const double tie_tol = 1e-12 * scale;

  Eigen::VectorXd u = -Eigen::VectorXd::Ones(v);
  Eigen::VectorXd Au = A * u;
  double value = u.dot(b) - u.dot(Au);
  double along = u.dot(direction);
  int positives = 0;

  std::vector<char> found(v + 1, 0);
  std::vector<double> best_value(v + 1, 0.0);
  std::vector<std::uint64_t> best_code(v + 1, 0);
  const std::uint64_t count = std::uint64_t{1} << v;
  for (std::uint64_t step = 0; step < count; ++step) {
    const std::uint64_t code = step ^ (step >> 1);
    if (step > 0) {
      const int i = std::countr_zero(step);
      const double ui = u[i];
      value += -2.0 * ui * b[i] + 4.0 * ui * Au[i];
      Au.noalias() -= (2.0 * ui) * A.col(i);
      along -= 2.0 * ui * direction[i];
      positives += ui < 0 ? 1 : -1;
      u[i] = -ui;
      if (step % kResyncPeriod == 0) {
        Au.noalias() = A * u;
        value = u.dot(b) - u.dot(Au);
        along = u.dot(direction);
      }
    }
    const int k = positives;
    const double total = value + coeff[k] * along;
    if (!found[k] || total > best_value[k] + tie_tol ||
        (total >= best_value[k] - tie_tol && code < best_code[k])) {
      if (!found[k] || total > best_value[k]) best_value[k] = total;
      best_code[k] = code;
      found[k] = 1;
    }
  }

  std::vector<DecodeSolution> out;
  out.reserve(v + 1);
  for (int k = 0; k <= v; ++k) {
    QboProblem pk(A, b + coeff[k] * direction, CardinalityConstraint(v, k));
    out.push_back(IntegralSolution(pk, Labeling::FromCode(best_code[k], v),
                                   SolverTag::kExhaustive));
  }
  return out;
}

}  // namespace mlprior
