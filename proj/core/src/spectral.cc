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

#include "mlprior/spectral.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <vector>

#include "mlprior/errors.h"
#include "mlprior/trs.h"

namespace mlprior {

namespace internal {

Labeling RoundSpectral(const QboProblem& problem, const Eigen::VectorXd& u) {
  const auto& constraint = problem.constraint();
  if (!constraint) return Labeling::FromSigns(u);
  if (const auto k = constraint->Cardinality()) {
    const int n = problem.size();
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return u[i] > u[j]; });
    Labeling out = Labeling::AllNegative(n);
    for (int r = 0; r < *k; ++r) out.Set(order[r], 1);
    return out;
  }
  Labeling out = Labeling::FromSigns(u);
  if (!constraint->SatisfiedBy(out)) {
    throw SolverError("sign rounding violates the affine constraint");
  }
  return out;
}

}  // namespace internal

namespace {

DecodeSolution Finish(const QboProblem& problem, Eigen::VectorXd u,
                      double relaxation_value, SolverTag tag) {
  DecodeSolution out;
  out.rounded = internal::RoundSpectral(problem, u);
  out.rounded_value = problem.Objective(out.rounded);
  out.relaxed_u = std::move(u);
  out.relaxation_value = relaxation_value;
  out.solver = tag;
  return out;
}

void RequireUsableConstraint(const AffineConstraint& c, int n) {
  if (c.alpha.size() != n) throw DimensionError("constraint size mismatch");
  if (c.alpha.isZero(0.0)) throw InvalidArgument("affine constraint with alpha = 0");
}

}  // namespace

DecodeSolution SpectralDecode(const QboProblem& problem,
                              const SpectralConfig& config) {
  const int n = problem.size();
  const double radius_sq = n;
  TrsProblem trs{problem.A(), problem.b(), radius_sq};
  const auto& constraint = problem.constraint();
  if (!constraint) {
    TrsSolution s = SolveTrs(trs);
    return Finish(problem, std::move(s.u), s.value, SolverTag::kSpectral);
  }
  RequireUsableConstraint(*constraint, n);
  const Eigen::VectorXd& alpha = constraint->alpha;
  const double beta = constraint->beta;

  // The sphere meets the hyperplane in a single point.
  const double reach = alpha.norm() * std::sqrt(radius_sq);
  const double touch_tol = 1e-12 * (reach + std::abs(beta) + 1.0);
  if (std::abs(beta) > reach + touch_tol) {
    throw InvalidArgument("affine constraint does not meet the sphere");
  }
  if (std::abs(beta) >= reach - touch_tol) {
    Eigen::VectorXd u = (beta / alpha.squaredNorm()) * alpha;
    const double value = problem.Objective(u);
    return Finish(problem, std::move(u), value, SolverTag::kSpectral);
  }

  struct Eval {
    double mu;
    double dual;
    double subgradient;
    Eigen::VectorXd u;
  };
  double best_dual = std::numeric_limits<double>::infinity();
  auto evaluate = [&](double mu) {
    trs.c = problem.b() - mu * alpha;
    TrsSolution s = SolveTrs(trs);
    Eval e{mu, mu * beta + s.value, beta - alpha.dot(s.u), std::move(s.u)};
    best_dual = std::min(best_dual, e.dual);
    return e;
  };

  // The dual is convex in mu with subgradient beta - alpha^T u(mu).
  Eval lo = evaluate(-1.0);
  Eval hi = evaluate(1.0);
  while (lo.subgradient > 0.0 && lo.mu > -config.bracket_cap) {
    hi = std::move(lo);
    lo = evaluate(std::max(2.0 * hi.mu, -config.bracket_cap));
  }
  while (hi.subgradient < 0.0 && hi.mu < config.bracket_cap) {
    lo = std::move(hi);
    hi = evaluate(std::min(2.0 * lo.mu, config.bracket_cap));
  }
  if (lo.subgradient > 0.0 || hi.subgradient < 0.0) {
    std::ostringstream msg;
    msg << "multiplier bracket failed: subgradient " << lo.subgradient
        << " at mu=" << lo.mu << ", " << hi.subgradient << " at mu=" << hi.mu;
    throw SolverError(msg.str());
  }

  Eval* best = std::abs(lo.subgradient) <= std::abs(hi.subgradient) ? &lo : &hi;
  Eval mid;
  for (int it = 0; it < config.max_bisection_steps &&
                   std::abs(best->subgradient) > config.subgradient_tolerance;
       ++it) {
    mid = evaluate(0.5 * (lo.mu + hi.mu));
    if (mid.subgradient < 0.0) {
      lo = std::move(mid);
    } else {
      hi = std::move(mid);
    }
    best = std::abs(lo.subgradient) <= std::abs(hi.subgradient) ? &lo : &hi;
  }
  return Finish(problem, std::move(best->u), best_dual, SolverTag::kSpectral);
}

QrReducedProblem BuildQrReducedProblem(const QboProblem& problem) {
  const auto& constraint = problem.constraint();
  if (!constraint) throw InvalidArgument("QR reduction needs an affine constraint");
  const int n = problem.size();
  RequireUsableConstraint(*constraint, n);

  Eigen::MatrixXd N = Eigen::MatrixXd::Zero(n + 1, 2);
  N.col(0).head(n) = constraint->alpha;
  N(n, 1) = 1.0;
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(N);

  QrReducedProblem red;
  red.Q = qr.householderQ();
  red.R = red.Q.transpose() * N;
  red.R.bottomRows(n - 1).setZero();
  red.R(1, 0) = 0.0;
  const Eigen::Matrix2d r_top = red.R.topRows(2);
  red.fixed = r_top.transpose().triangularView<Eigen::Lower>().solve(
      Eigen::Vector2d(constraint->beta, 1.0));

  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n + 1, n + 1);
  B.topLeftCorner(n, n) = -problem.A();
  B.col(n).head(n) = 0.5 * problem.b();
  B.row(n).head(n) = 0.5 * problem.b().transpose();
  Eigen::MatrixXd T = red.Q.transpose() * B * red.Q;
  T = 0.5 * (T + T.transpose()).eval();
  red.delta = T.topLeftCorner(2, 2);
  red.gamma = T.topRightCorner(2, n - 1);
  red.free_block = T.bottomRightCorner(n - 1, n - 1);
  red.slack = n + 1.0 - red.fixed.squaredNorm();
  return red;
}

DecodeSolution SpectralDecodeQr(const QboProblem& problem) {
  const QrReducedProblem red = BuildQrReducedProblem(problem);
  const int n = problem.size();
  const double slack_tol = 1e-12 * (n + 1.0);
  if (red.slack <= slack_tol) {
    std::ostringstream msg;
    msg << "affine constraint leaves no room on the sphere (slack " << red.slack
        << ")";
    throw InvalidArgument(msg.str());
  }
  Eigen::VectorXd w(n + 1);
  w.head(2) = red.fixed;
  double value = red.fixed.dot(red.delta * red.fixed);
  if (n > 1) {
    // w^T T w = w1^T D w1 + 2 w1^T G w2 + w2^T C w2 over ||w2||^2 = slack.
    TrsProblem trs{-red.free_block, 2.0 * red.gamma.transpose() * red.fixed,
                   red.slack};
    const TrsSolution s = SolveTrs(trs);
    w.tail(n - 1) = s.u;
    value += s.value;
  }
  const Eigen::VectorXd v = red.Q * w;
  return Finish(problem, v.head(n), value, SolverTag::kSpectralQr);
}

}  // namespace mlprior
