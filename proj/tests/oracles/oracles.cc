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


#include "oracles.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace oracle {

double Objective(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                 const Eigen::VectorXd& u) {
  double quad = 0.0;
  for (int i = 0; i < u.size(); ++i) {
    for (int j = 0; j < u.size(); ++j) quad += u[i] * A(i, j) * u[j];
  }
  double lin = 0.0;
  for (int i = 0; i < u.size(); ++i) lin += u[i] * b[i];
  return lin - quad;
}

Eigen::VectorXd SignsFromCode(std::uint64_t code, int n) {
  Eigen::VectorXd u(n);
  for (int i = 0; i < n; ++i) u[i] = ((code >> i) & 1U) ? 1.0 : -1.0;
  return u;
}

BruteResult BruteForceMax(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                          const std::function<bool(const Eigen::VectorXd&)>& keep) {
  const int n = static_cast<int>(b.size());
  BruteResult best;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << n); ++code) {
    const Eigen::VectorXd u = SignsFromCode(code, n);
    if (keep && !keep(u)) continue;
    const double value = Objective(A, b, u);
    if (!best.found || value > best.value) {
      best.value = value;
      best.code = code;
      best.found = true;
    }
  }
  return best;
}

BruteResult BruteForceMaxCardinality(const Eigen::MatrixXd& A,
                                     const Eigen::VectorXd& b, int k) {
  return BruteForceMax(A, b, [k](const Eigen::VectorXd& u) {
    return (u.array() > 0).count() == k;
  });
}

namespace {

struct Counts {
  int tp = 0, fp = 0, fn = 0, tn = 0;
};

Counts Count(const Eigen::VectorXd& y, const Eigen::VectorXd& ref) {
  Counts c;
  for (int i = 0; i < y.size(); ++i) {
    const bool p = y[i] > 0, r = ref[i] > 0;
    if (p && r) ++c.tp;
    else if (p) ++c.fp;
    else if (r) ++c.fn;
    else ++c.tn;
  }
  return c;
}

}  // namespace

double F1LossFromCounts(const Eigen::VectorXd& y, const Eigen::VectorXd& ref) {
  const Counts c = Count(y, ref);
  const int den = 2 * c.tp + c.fp + c.fn;
  if (den == 0) return 0.0;
  return 1.0 - 2.0 * c.tp / den;
}

double HammingFromCounts(const Eigen::VectorXd& y, const Eigen::VectorXd& ref) {
  const Counts c = Count(y, ref);
  return double(c.fp + c.fn) / double(y.size());
}

double BruteForceLossAugmented(const Eigen::MatrixXd& A, const Eigen::VectorXd& s,
                               const Eigen::VectorXd& ref, bool f1) {
  const int n = static_cast<int>(s.size());
  double best = -std::numeric_limits<double>::infinity();
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << n); ++code) {
    const Eigen::VectorXd y = SignsFromCode(code, n);
    const double loss = f1 ? F1LossFromCounts(y, ref) : HammingFromCounts(y, ref);
    best = std::max(best, loss + Objective(A, s, y));
  }
  return best;
}

TrsReference SecularTrs(const Eigen::MatrixXd& A, const Eigen::VectorXd& c,
                        double r) {
  using LMat = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  using LVec = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
  const int n = static_cast<int>(c.size());
  Eigen::SelfAdjointEigenSolver<LMat> eig(A.cast<long double>());
  const LVec lam = eig.eigenvalues();
  const LMat Q = eig.eigenvectors();
  const LVec gamma = Q.transpose() * (c.cast<long double>() / 2.0L);
  const long double lmin = lam[0];
  const long double rr = r;

  // Eigen-directions tied with the bottom one.
  const long double spread = std::max<long double>(1.0L, std::abs(lam[n - 1] - lmin));
  std::vector<bool> bottom(n);
  long double bottom_norm = 0.0L, total = gamma.norm();
  for (int i = 0; i < n; ++i) {
    bottom[i] = lam[i] - lmin <= 1e-12L * spread;
    if (bottom[i]) bottom_norm += gamma[i] * gamma[i];
  }
  bottom_norm = std::sqrt(bottom_norm);

  auto norm_sq = [&](long double mu) {
    long double s = 0.0L;
    for (int i = 0; i < n; ++i) {
      const long double d = lam[i] - mu;
      s += gamma[i] * gamma[i] / (d * d);
    }
    return s;
  };

  TrsReference out;
  LVec y(n);
  if (bottom_norm <= 1e-12L * std::max<long double>(total, 1e-300L)) {
    long double rest = 0.0L;
    for (int i = 0; i < n; ++i) {
      if (!bottom[i]) {
        const long double d = lam[i] - lmin;
        rest += gamma[i] * gamma[i] / (d * d);
      }
    }
    if (rest <= rr) {
      out.hard = true;
      out.lambda = static_cast<double>(lmin);
      for (int i = 0; i < n; ++i) y[i] = bottom[i] ? 0.0L : gamma[i] / (lam[i] - lmin);
      int first = 0;
      while (!bottom[first]) ++first;
      y[first] = std::sqrt(rr - rest);
      const LVec u = Q * y;
      out.u = u.cast<double>();
      out.value = Objective(A, c, out.u);
      return out;
    }
  }
  // norm_sq is increasing on (-inf, lmin); find mu with norm_sq(mu) = r.
  long double hi = lmin;
  long double lo = lmin - total / std::sqrt(rr) - 1.0L;
  while (norm_sq(lo) > rr) lo -= (lmin - lo);
  for (int it = 0; it < 400; ++it) {
    const long double mid = 0.5L * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (norm_sq(mid) < rr) lo = mid;
    else hi = mid;
  }
  const long double mu = 0.5L * (lo + hi);
  for (int i = 0; i < n; ++i) y[i] = gamma[i] / (lam[i] - mu);
  // Land exactly on the sphere.
  y *= std::sqrt(rr) / y.norm();
  const LVec u = Q * y;
  out.u = u.cast<double>();
  out.lambda = static_cast<double>(mu);
  out.value = Objective(A, c, out.u);
  return out;
}

namespace {

double Quadratic(const Eigen::MatrixXd& A, const Eigen::VectorXd& c,
                 const Eigen::VectorXd& u) {
  return u.dot(c) - u.dot(A * u);
}

// Coarse grid then repeated zoom around the best cell.
template <typename Eval>
double ZoomMax1d(Eval eval, double lo, double hi, int steps) {
  double best = -std::numeric_limits<double>::infinity();
  double best_t = lo;
  for (int round = 0; round < 8; ++round) {
    const double h = (hi - lo) / steps;
    for (int i = 0; i <= steps; ++i) {
      const double t = lo + i * h;
      const double v = eval(t);
      if (v > best) {
        best = v;
        best_t = t;
      }
    }
    lo = best_t - 2 * h;
    hi = best_t + 2 * h;
  }
  return best;
}

}  // namespace

double SphereGridMax(const Eigen::MatrixXd& A, const Eigen::VectorXd& c, double r,
                     int steps) {
  const double rad = std::sqrt(r);
  const double pi = std::acos(-1.0);
  if (c.size() == 2) {
    return ZoomMax1d(
        [&](double t) {
          const Eigen::Vector2d u(rad * std::cos(t), rad * std::sin(t));
          return Quadratic(A, c, u);
        },
        0.0, 2 * pi, steps);
  }
  if (c.size() != 3) throw std::invalid_argument("SphereGridMax: n must be 2 or 3");
  auto at = [&](double th, double ph) {
    const Eigen::Vector3d u(rad * std::sin(th) * std::cos(ph),
                            rad * std::sin(th) * std::sin(ph), rad * std::cos(th));
    return Quadratic(A, c, u);
  };
  double best = -std::numeric_limits<double>::infinity();
  double bt = 0, bp = 0;
  double tlo = 0, thi = pi, plo = 0, phi = 2 * pi;
  for (int round = 0; round < 8; ++round) {
    const double ht = (thi - tlo) / steps, hp = (phi - plo) / steps;
    for (int i = 0; i <= steps; ++i) {
      for (int j = 0; j <= steps; ++j) {
        const double v = at(tlo + i * ht, plo + j * hp);
        if (v > best) {
          best = v;
          bt = tlo + i * ht;
          bp = plo + j * hp;
        }
      }
    }
    tlo = bt - 2 * ht;
    thi = bt + 2 * ht;
    plo = bp - 2 * hp;
    phi = bp + 2 * hp;
  }
  return best;
}

double ConstrainedSphereGridMax(const Eigen::MatrixXd& A, const Eigen::VectorXd& c,
                                double r, const Eigen::VectorXd& alpha, double beta,
                                int steps) {
  if (c.size() != 3) throw std::invalid_argument("ConstrainedSphereGridMax: n must be 3");
  const Eigen::Vector3d a = alpha;
  const Eigen::Vector3d p = beta * a / a.squaredNorm();
  const double rho_sq = r - p.squaredNorm();
  if (rho_sq < 0) return -std::numeric_limits<double>::infinity();
  const double rho = std::sqrt(rho_sq);
  // Any vector not parallel to alpha seeds the in-plane basis.
  Eigen::Vector3d seed = Eigen::Vector3d::UnitX();
  if (std::abs(a.normalized().dot(seed)) > 0.9) seed = Eigen::Vector3d::UnitY();
  const Eigen::Vector3d e1 = (seed - seed.dot(a) / a.squaredNorm() * a).normalized();
  const Eigen::Vector3d e2 = a.cross(e1).normalized();
  return ZoomMax1d(
      [&](double t) {
        const Eigen::Vector3d u = p + rho * (std::cos(t) * e1 + std::sin(t) * e2);
        return Quadratic(A, c, u);
      },
      0.0, 2 * std::acos(-1.0), steps);
}

Eigen::VectorXd TvProxDual(const Eigen::MatrixXd& weights, const Eigen::VectorXd& g,
                           int iterations) {
  const int n = static_cast<int>(g.size());
  struct Edge {
    int i, j;
    double w;
  };
  std::vector<Edge> edges;
  std::vector<int> degree(n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (weights(i, j) > 0) {
        edges.push_back({i, j, weights(i, j)});
        ++degree[i];
        ++degree[j];
      }
    }
  }
  if (edges.empty()) return g;
  const int max_deg = *std::max_element(degree.begin(), degree.end());
  const double step = 1.0 / (2.0 * max_deg);
  const std::size_t m = edges.size();
  std::vector<double> z(m, 0.0), z_prev(m, 0.0), y(m, 0.0);
  auto primal = [&](const std::vector<double>& flow) {
    Eigen::VectorXd u = g;
    for (std::size_t e = 0; e < m; ++e) {
      u[edges[e].i] -= flow[e];
      u[edges[e].j] += flow[e];
    }
    return u;
  };
  double t = 1.0;
  for (int it = 0; it < iterations; ++it) {
    const Eigen::VectorXd u = primal(y);
    for (std::size_t e = 0; e < m; ++e) {
      const double grad = -(u[edges[e].i] - u[edges[e].j]);
      z[e] = std::clamp(y[e] - step * grad, -edges[e].w, edges[e].w);
    }
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    for (std::size_t e = 0; e < m; ++e) {
      y[e] = z[e] + (t - 1.0) / t_next * (z[e] - z_prev[e]);
    }
    z_prev = z;
    t = t_next;
  }
  return primal(z);
}

double CentralDifference(const std::function<double(double)>& f_of_t, double eps) {
  return (f_of_t(eps) - f_of_t(-eps)) / (2.0 * eps);
}

Eigen::MatrixXd RandomPrior(std::mt19937_64& rng, int n, double scale, bool nonpos) {
  std::normal_distribution<double> normal(0.0, scale);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double v = normal(rng);
      if (nonpos) v = -std::abs(v);
      A(i, j) = A(j, i) = v;
    }
  }
  return A;
}

Eigen::VectorXd RandomVector(std::mt19937_64& rng, int n, double scale) {
  std::normal_distribution<double> normal(0.0, scale);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = normal(rng);
  return v;
}

}  // namespace oracle
