// Copyright 2026 The ronmf Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ronmf/prox.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace ronmf {
namespace {

constexpr int kPowerMaxIter = 200;
constexpr double kPowerRelTol = 1e-6;
constexpr int kBisectionIter = 200;

double sign(double x) { return (x > 0.0) - (x < 0.0); }

}  // namespace

Vector soft_threshold(const Vector& x, double lam) {
  if (!(lam >= 0.0)) throw InvalidArgument("soft_threshold: lam must be >= 0");
  Vector out(x.size());
  for (Index i = 0; i < x.size(); ++i) {
    const double mag = std::abs(x[i]) - lam;
    out[i] = mag > 0.0 ? sign(x[i]) * mag : 0.0;
  }
  return out;
}

Vector box_soft_threshold(const Vector& x, double lam, double M) {
  if (!(lam >= 0.0)) {
    throw InvalidArgument("box_soft_threshold: lam must be >= 0");
  }
  if (!(M > 0.0)) throw InvalidArgument("box_soft_threshold: M must be > 0");
  Vector out(x.size());
  for (Index i = 0; i < x.size(); ++i) {
    const double a = std::abs(x[i]);
    if (a < lam) {
      out[i] = 0.0;
    } else if (a <= lam + M) {
      out[i] = x[i] - sign(x[i]) * lam;
    } else {
      out[i] = sign(x[i]) * M;
    }
  }
  return out;
}

Vector project_nonneg(const Vector& x) { return x.cwiseMax(0.0); }

Vector project_nonneg_l2_ball(const Vector& y) {
  Vector p = y.cwiseMax(0.0);
  const double n = p.norm();
  if (n > 1.0) p /= n;
  return p;
}

Vector project_simplex(const Vector& y) {
  const Index n = y.size();
  if (n == 0) throw InvalidArgument("project_simplex: empty vector");
  std::vector<double> u(y.data(), y.data() + n);
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumsum = 0.0;
  double theta = 0.0;
  for (Index j = 0; j < n; ++j) {
    cumsum += u[j];
    const double candidate = (cumsum - 1.0) / static_cast<double>(j + 1);
    if (u[j] - candidate > 0.0) theta = candidate;
  }
  return (y.array() - theta).cwiseMax(0.0).matrix();
}

Vector project_elastic_net_ball(const Vector& y, double g1, double g2) {
  if (!(g1 >= 0.0) || !(g2 >= 0.0) || !(g1 + g2 > 0.0)) {
    throw InvalidArgument(
        "project_elastic_net_ball: need g1, g2 >= 0 and g1 + g2 > 0");
  }
  auto constraint = [&](const Vector& x) {
    return g1 * x.lpNorm<1>() + 0.5 * g2 * x.squaredNorm();
  };
  // Stationary point for multiplier mu: max(y - mu g1, 0) / (1 + mu g2).
  auto candidate = [&](double mu) -> Vector {
    return (y.array() - mu * g1).cwiseMax(0.0).matrix() / (1.0 + mu * g2);
  };

  Vector x = candidate(0.0);
  if (constraint(x) <= 1.0) return x;

  double lo = 0.0;
  double hi = 1.0;
  while (constraint(candidate(hi)) > 1.0) {
    lo = hi;
    hi *= 2.0;
  }
  for (int it = 0; it < kBisectionIter && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (constraint(candidate(mid)) > 1.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return candidate(hi);
}

Vector project_box(const Vector& x, double M, bool nonneg) {
  const double lo = nonneg ? 0.0 : -M;
  return x.cwiseMax(lo).cwiseMin(M);
}

Vector project_outlier(const Vector& x, const OutlierSet& set) {
  return project_box(x, set.M(), set.nonneg());
}

Vector prox_outlier(const Vector& x, double lam, const OutlierSet& set,
                    double scale) {
  // The problem is separable; clamping the unconstrained scalar minimizer
  // onto the interval is exact.
  Vector z = soft_threshold(x, lam);
  if (scale != 1.0) z /= scale;
  if (set.kind == OutlierKind::kUnbounded) return z;
  return project_outlier(z, set);
}

Vector project_column(const Vector& y, const ConstraintSpec& spec) {
  switch (spec.kind) {
    case DictConstraint::kUnitNonnegL2Ball:
      return project_nonneg_l2_ball(y);
    case DictConstraint::kNonnegOrthant:
      return project_nonneg(y);
    case DictConstraint::kProbabilitySimplex:
      return project_simplex(y);
    case DictConstraint::kElasticNetBall:
      return project_elastic_net_ball(y, spec.gamma1, spec.gamma2);
  }
  throw InvalidArgument("project_column: unknown constraint");
}

void project_columns(Matrix& W, const ConstraintSpec& spec) {
  switch (spec.kind) {
    case DictConstraint::kUnitNonnegL2Ball:
      W = W.cwiseMax(0.0);
      for (Index j = 0; j < W.cols(); ++j) {
        const double n = W.col(j).norm();
        if (n > 1.0) W.col(j) /= n;
      }
      return;
    case DictConstraint::kNonnegOrthant:
      W = W.cwiseMax(0.0);
      return;
    default:
      for (Index j = 0; j < W.cols(); ++j) {
        W.col(j) = project_column(W.col(j), spec);
      }
  }
}

double largest_eigenvalue_psd(const Matrix& G) {
  const Index n = G.rows();
  if (n == 0 || G.isZero(0.0)) return 0.0;
  Vector x = Vector::Ones(n) / std::sqrt(static_cast<double>(n));
  Vector y = G * x;
  if (y.norm() == 0.0) {
    // All-ones start is orthogonal to the range; restart on the heaviest
    // diagonal direction (cannot be in the null space of a PSD matrix).
    Index j = 0;
    G.diagonal().maxCoeff(&j);
    x = Vector::Unit(n, j);
    y = G * x;
  }
  double estimate = x.dot(y);
  for (int it = 0; it < kPowerMaxIter; ++it) {
    const double ny = y.norm();
    if (ny == 0.0) return 0.0;
    x = y / ny;
    y = G * x;
    const double next = x.dot(y);
    const bool done = std::abs(next - estimate) <= kPowerRelTol * std::abs(next);
    estimate = next;
    if (done) break;
  }
  return std::max(estimate, 0.0);
}

double spectral_norm_sq(const Matrix& W) {
  if (W.size() == 0) return 0.0;
  const Matrix G = W.transpose() * W;
  return largest_eigenvalue_psd(G);
}

}  // namespace ronmf
