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

#include "ronmf/encode.hpp"

#include <cmath>
#include <random>

#include "ronmf/prox.hpp"

namespace ronmf {

bool relative_change_below(double prev, double cur, double eps) {
  const double denom = std::abs(prev);
  if (denom == 0.0) return cur == 0.0;
  return std::abs(cur - prev) / denom < eps;
}

std::string to_string(EncodeSolver solver) {
  return solver == EncodeSolver::kPgd ? "pgd" : "admm";
}

Encoder::Encoder(const Matrix& W, EncodeConfig cfg)
    : W_(W), cfg_(std::move(cfg)) {
  cfg_.params.validate();
  require_finite(W_, "W");
  lambda_ = cfg_.params.lambda_for(W_.rows());
  gram_ = W_.transpose() * W_;
  const double nu1 = cfg_.params.nu1;
  lipschitz_ = largest_eigenvalue_psd(gram_) + nu1;
  if (cfg_.solver == EncodeSolver::kAdmm) {
    Matrix system = gram_;
    system.diagonal().array() += cfg_.params.rho1 + nu1;
    admm_factor_.compute(system);
    if (admm_factor_.info() != Eigen::Success) {
      throw Error("Encoder: factorization of W^T W + rho1 I failed");
    }
  }
}

double Encoder::objective(const Vector& v, const Vector& Wh, const Vector& h,
                          const Vector& r) const {
  const HyperParams& p = cfg_.params;
  double value = 0.5 * (v - Wh - r).squaredNorm() + lambda_ * r.lpNorm<1>();
  if (p.nu1 > 0.0) value += 0.5 * p.nu1 * h.squaredNorm();
  if (p.nu2 > 0.0) value += 0.5 * p.nu2 * r.squaredNorm();
  if (p.lambda_h_l1 > 0.0) value += p.lambda_h_l1 * h.lpNorm<1>();
  return value;
}

EncodeResult Encoder::encode(const Vector& v, std::uint64_t init_seed) const {
  if (v.size() != W_.rows()) {
    throw DimensionError("encode: sample length " + std::to_string(v.size()) +
                         " does not match dictionary rows " +
                         std::to_string(W_.rows()));
  }
  require_finite(v, "v");
  Vector h = Vector::Zero(W_.cols());
  if (cfg_.h_init == InitMode::kUniform01) {
    std::mt19937_64 gen(cfg_.params.seed ^ (init_seed * 0x9e3779b97f4a7c15ULL));
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (Index k = 0; k < h.size(); ++k) h[k] = unif(gen);
  }
  return cfg_.solver == EncodeSolver::kPgd ? encode_pgd(v, std::move(h))
                                           : encode_admm(v, std::move(h));
}

EncodeResult Encoder::encode_pgd(const Vector& v, Vector h) const {
  const HyperParams& p = cfg_.params;
  const OutlierSet& outliers = p.constraint.outlier;
  const bool step_h = lipschitz_ > 0.0;
  const double eta = step_h ? p.kappa_bar / lipschitz_ : 0.0;
  const double r_scale = 1.0 + p.nu2;

  const Vector Wtv = W_.transpose() * v;
  Vector r = Vector::Zero(v.size());
  Vector Wh = W_ * h;
  double prev = objective(v, Wh, h, r);

  EncodeResult out;
  for (Index k = 1; k <= p.max_iter_encode; ++k) {
    if (step_h) {
      // grad q(h) = W^T (W h + r - v) + nu1 h
      Vector grad = gram_ * h + W_.transpose() * r - Wtv;
      if (p.nu1 > 0.0) grad += p.nu1 * h;
      h = (h - eta * grad).array() - eta * p.lambda_h_l1;
      h = h.cwiseMax(0.0);
      Wh = W_ * h;
    }
    r = prox_outlier(v - Wh, lambda_, outliers, r_scale);
    const double cur = objective(v, Wh, h, r);
    out.iterations = k;
    if (relative_change_below(prev, cur, p.eps_encode)) {
      out.converged = true;
      prev = cur;
      break;
    }
    prev = cur;
  }
  out.h = std::move(h);
  out.r = std::move(r);
  out.objective = prev;
  return out;
}

EncodeResult Encoder::encode_admm(const Vector& v, Vector h) const {
  const HyperParams& p = cfg_.params;
  const OutlierSet& outliers = p.constraint.outlier;
  const double rho1 = p.rho1;
  const double rho2 = p.rho2;
  const Index F = v.size();
  const Index K = h.size();

  Vector u = h;
  Vector r = Vector::Zero(F);
  Vector q = Vector::Zero(F);
  Vector alpha = Vector::Zero(K);
  Vector beta = Vector::Zero(F);
  Vector Wu = W_ * u;
  double prev = objective(v, Wu, u, q);

  EncodeResult out;
  for (Index k = 1; k <= p.max_iter_encode; ++k) {
    h = admm_factor_.solve(W_.transpose() * (v - r) + rho1 * u - alpha);
    const Vector Wh = W_ * h;
    r = soft_threshold(rho2 * q + v - beta - Wh, lambda_) /
        (1.0 + rho2 + p.nu2);
    u = (h + (alpha.array() - p.lambda_h_l1).matrix() / rho1).cwiseMax(0.0);
    q = project_outlier(r + beta / rho2, outliers);
    alpha += rho1 * (h - u);
    beta += rho2 * (r - q);

    Wu = W_ * u;
    const double cur = objective(v, Wu, u, q);
    out.iterations = k;
    if (relative_change_below(prev, cur, p.eps_encode)) {
      out.converged = true;
      prev = cur;
      break;
    }
    prev = cur;
  }
  out.h = std::move(u);
  out.r = std::move(q);
  out.objective = prev;
  return out;
}

EncodeResult encode_pgd(const Vector& v, const Dictionary& W,
                        const EncodeConfig& cfg) {
  EncodeConfig c = cfg;
  c.solver = EncodeSolver::kPgd;
  return Encoder(W.W, std::move(c)).encode(v);
}

EncodeResult encode_admm(const Vector& v, const Dictionary& W,
                         const EncodeConfig& cfg) {
  EncodeConfig c = cfg;
  c.solver = EncodeSolver::kAdmm;
  return Encoder(W.W, std::move(c)).encode(v);
}

EncodeResult encode(const Vector& v, const Dictionary& W,
                    const EncodeConfig& cfg) {
  return Encoder(W.W, cfg).encode(v);
}

}  // namespace ronmf
