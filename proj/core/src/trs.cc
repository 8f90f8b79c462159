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

#include "mlprior/trs.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "mlprior/errors.h"

namespace mlprior {
namespace {

// Above this size the companion eigenproblem only costs time; the secular
// iteration below starts from its own bracket instead.
constexpr int kMaxQepLabels = 400;

void CheckProblem(const TrsProblem& p) {
  const Eigen::Index n = p.c.size();
  if (n == 0) throw DimensionError("trust-region problem is empty");
  if (p.A.rows() != n || p.A.cols() != n) {
    throw DimensionError("trust-region matrix does not match the linear term");
  }
  if (!(p.radius_sq > 0.0) || !std::isfinite(p.radius_sq)) {
    throw InvalidArgument("trust-region radius must be positive and finite");
  }
  if (!p.A.allFinite() || !p.c.allFinite()) {
    throw InvalidArgument("trust-region data must be finite");
  }
  const double asym = (p.A - p.A.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * std::max(1.0, p.A.cwiseAbs().maxCoeff())) {
    throw InvalidArgument("trust-region matrix must be symmetric");
  }
}

// Smallest real eigenvalue of the companion matrix, or NaN if none.
double SmallestRealQepEigenvalue(const TrsProblem& p, double imag_tol) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(BuildQepPencil(p), false);
  if (es.info() != Eigen::Success) return std::numeric_limits<double>::quiet_NaN();
  double best = std::numeric_limits<double>::quiet_NaN();
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const auto z = es.eigenvalues()[i];
    if (std::abs(z.imag()) > imag_tol) continue;
    if (std::isnan(best) || z.real() < best) best = z.real();
  }
  return best;
}

}  // namespace

Eigen::MatrixXd BuildQepPencil(const TrsProblem& p) {
  CheckProblem(p);
  const Eigen::Index n = p.c.size();
  Eigen::MatrixXd S(2 * n, 2 * n);
  S.topLeftCorner(n, n) = p.A;
  S.topRightCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);
  S.bottomLeftCorner(n, n) = -(p.c * p.c.transpose()) / (4.0 * p.radius_sq);
  S.bottomRightCorner(n, n) = p.A;
  return S;
}

TrsSolution SolveTrs(const TrsProblem& p) {
  CheckProblem(p);
  const int n = static_cast<int>(p.c.size());
  const double r = p.radius_sq;
  const Eigen::MatrixXd A = 0.5 * (p.A + p.A.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(A);
  if (eig.info() != Eigen::Success) {
    throw SolverError("symmetric eigensolver failed on the trust-region matrix");
  }
  const Eigen::VectorXd& a = eig.eigenvalues();
  const Eigen::MatrixXd& Q = eig.eigenvectors();
  const Eigen::VectorXd gamma = 0.5 * (Q.transpose() * p.c);
  const double a_scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  // Offsets from the smallest eigenvalue; the multiplier is a[0] - delta.
  Eigen::VectorXd gap = a.array() - a[0];
  int bottom = 1;
  while (bottom < n && gap[bottom] <= 1e-10 * a_scale) ++bottom;
  for (int i = 0; i < bottom; ++i) gap[i] = 0.0;
  const double gamma_norm = gamma.norm();
  const double bottom_norm = gamma.head(bottom).norm();

  TrsSolution sol;
  Eigen::VectorXd w(n);
  if (bottom_norm <= 1e-10 * gamma_norm) {
    double rest = 0.0;
    for (int i = bottom; i < n; ++i) rest += std::pow(gamma[i] / gap[i], 2);
    if (rest <= r) {
      w.setZero();
      for (int i = bottom; i < n; ++i) w[i] = gamma[i] / gap[i];
      w[0] = std::sqrt(r - rest);
      sol.u = Q * w;
      sol.lambda = a[0];
      sol.hard_case = true;
    }
  }

  if (!sol.hard_case) {
    // ||u(delta)||^2 >= bottom_norm^2 / delta^2 and <= gamma_norm^2 / delta^2.
    double lo = bottom_norm / std::sqrt(r);
    double hi = gamma_norm / std::sqrt(r);
    double delta = 0.5 * (lo + hi);
    if (n <= kMaxQepLabels) {
      const double lam = SmallestRealQepEigenvalue(
          p, 1e-8 * (a_scale + p.c.norm()));
      const double d0 = a[0] - lam;
      if (std::isfinite(d0) && d0 > lo && d0 < hi) delta = d0;
    }
    // Newton on 1/||u(delta)|| - 1/sqrt(r), which increases with delta,
    // safeguarded by bisection.
    const double inv_r = 1.0 / std::sqrt(r);
    for (int it = 0; it < 200; ++it) {
      double s = 0.0, ds = 0.0;
      for (int i = 0; i < n; ++i) {
        const double d = gap[i] + delta;
        const double t = gamma[i] * gamma[i] / (d * d);
        s += t;
        ds += t / d;
      }
      const double phi = 1.0 / std::sqrt(s) - inv_r;
      if (std::abs(s - r) <= 4.0 * std::numeric_limits<double>::epsilon() * r) break;
      if (phi < 0.0) {
        lo = delta;
      } else {
        hi = delta;
      }
      if (hi - lo <= 2.0 * std::numeric_limits<double>::epsilon() * hi) break;
      const double dphi = ds / (s * std::sqrt(s));
      double next = delta - phi / dphi;
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      delta = next;
    }
    for (int i = 0; i < n; ++i) w[i] = gamma[i] / (gap[i] + delta);
    sol.u = Q * w;
    sol.lambda = a[0] - delta;
  }

  const double norm = sol.u.norm();
  if (norm > 0.0) sol.u *= std::sqrt(r) / norm;
  sol.value = sol.u.dot(p.c) - sol.u.dot(A * sol.u);
  return sol;
}

}  // namespace mlprior
