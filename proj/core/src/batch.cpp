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

#include "ronmf/batch.hpp"

#include <chrono>

#include <Eigen/Cholesky>

#include "ronmf/encode.hpp"
#include "ronmf/prox.hpp"
#include "ronmf/rng.hpp"

namespace ronmf {
namespace {

using Clock = std::chrono::steady_clock;

// Entrywise r-step: soft-threshold, divide by `scale`, clamp to the set.
void prox_outlier_inplace(Matrix& X, double lam, const OutlierSet& set,
                          double scale) {
  const double M = set.M();
  const double lo = set.nonneg() ? 0.0 : -M;
  const bool bounded = set.kind != OutlierKind::kUnbounded;
  for (Index j = 0; j < X.cols(); ++j) {
    for (Index i = 0; i < X.rows(); ++i) {
      const double x = X(i, j);
      const double mag = std::abs(x) - lam;
      double z = mag > 0.0 ? (x > 0.0 ? mag : -mag) / scale : 0.0;
      if (bounded) z = std::min(std::max(z, lo), M);
      X(i, j) = z;
    }
  }
}

void soft_threshold_inplace(Matrix& X, double lam) {
  X = X.unaryExpr([lam](double x) {
    const double mag = std::abs(x) - lam;
    return mag > 0.0 ? (x > 0.0 ? mag : -mag) : 0.0;
  });
}

void clamp_outlier_inplace(Matrix& X, const OutlierSet& set) {
  if (set.kind == OutlierKind::kUnbounded) return;
  const double M = set.M();
  X = X.cwiseMax(set.nonneg() ? 0.0 : -M).cwiseMin(M);
}

struct Init {
  Matrix W;
  Matrix H;
};

Init initialize(const Matrix& V, const HyperParams& params,
                const BatchOptions& opts) {
  params.validate();
  require_finite(V, "V");
  const Index F = V.rows();
  const Index N = V.cols();
  const Index K = params.K;
  if (F == 0 || N == 0) throw InvalidArgument("batch: empty data matrix");
  if (opts.clean && (opts.clean->rows() != F || opts.clean->cols() != N)) {
    throw DimensionError("batch: clean matrix shape differs from V");
  }
  Init init;
  if (opts.W_init) {
    if (opts.W_init->rows() != F || opts.W_init->cols() != K) {
      throw DimensionError("batch: W_init must be F x K");
    }
    init.W = *opts.W_init;
  } else {
    // Same draw as the online engine so both start from one W0.
    init.W.resize(F, K);
    Rng gen = make_rng(params.seed, "online.W0");
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (Index j = 0; j < K; ++j) {
      for (Index i = 0; i < F; ++i) init.W(i, j) = unif(gen);
    }
    project_columns(init.W, params.constraint);
  }
  if (opts.H_init) {
    if (opts.H_init->rows() != K || opts.H_init->cols() != N) {
      throw DimensionError("batch: H_init must be K x N");
    }
    init.H = *opts.H_init;
  } else {
    init.H.resize(K, N);
    Rng gen = make_rng(params.seed, "batch.H0");
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (Index j = 0; j < N; ++j) {
      for (Index i = 0; i < K; ++i) init.H(i, j) = unif(gen);
    }
  }
  return init;
}

class TraceRecorder {
 public:
  TraceRecorder(const Matrix& V, const BatchOptions& opts)
      : N_(static_cast<double>(V.cols())), clean_(opts.clean),
        start_(Clock::now()) {}

  void record(BatchResult& out, Index k, double objective, const Matrix& W,
              const Matrix& H, const Matrix& W_prev) {
    // Regret evaluation is excluded from the solver's wall clock.
    elapsed_ += std::chrono::duration<double>(Clock::now() - start_).count();
    TraceRecord rec;
    rec.t = k;
    rec.wall_clock_s = elapsed_;
    rec.surrogate_loss = objective / N_;
    if (clean_) rec.regret_loss = 0.5 * (*clean_ - W * H).squaredNorm() / N_;
    rec.dict_drift = (W - W_prev).norm();
    out.trace.push_back(rec);
    start_ = Clock::now();
  }

 private:
  double N_;
  const Matrix* clean_;
  Clock::time_point start_;
  double elapsed_ = 0.0;
};

}  // namespace

double batch_objective(const Matrix& V, const Matrix& W, const Matrix& H,
                       const Matrix& R, const HyperParams& params) {
  if (W.rows() != V.rows() || H.cols() != V.cols() || W.cols() != H.rows() ||
      R.rows() != V.rows() || R.cols() != V.cols()) {
    throw DimensionError("batch_objective: dimension mismatch");
  }
  const double lambda = params.lambda_for(V.rows());
  double value = 0.5 * (V - W * H - R).squaredNorm() +
                 lambda * R.cwiseAbs().sum();
  if (params.nu1 > 0.0) value += 0.5 * params.nu1 * H.squaredNorm();
  if (params.nu2 > 0.0) value += 0.5 * params.nu2 * R.squaredNorm();
  if (params.lambda_h_l1 > 0.0) value += params.lambda_h_l1 * H.cwiseAbs().sum();
  return value;
}

BatchResult bpgd(const Matrix& V, const HyperParams& params,
                 const BatchOptions& opts) {
  Init init = initialize(V, params, opts);
  const double lambda = params.lambda_for(V.rows());
  const OutlierSet& outliers = params.constraint.outlier;

  BatchResult out;
  Matrix W = std::move(init.W);
  Matrix H = std::move(init.H);
  Matrix R = Matrix::Zero(V.rows(), V.cols());
  Matrix WH(V.rows(), V.cols());

  double prev = batch_objective(V, W, H, R, params);
  out.objective.push_back(prev);
  TraceRecorder recorder(V, opts);

  for (Index k = 1; k <= opts.max_outer; ++k) {
    const Matrix W_prev = W;

    // H-step: projected gradient with eta1 = kappa / ||W||_2^2.
    const Matrix gram = W.transpose() * W;
    const double lip_h = largest_eigenvalue_psd(gram) + params.nu1;
    if (lip_h > 0.0) {
      const double eta1 = params.kappa_bar / lip_h;
      Matrix grad = gram * H;
      grad.noalias() += W.transpose() * (R - V);
      if (params.nu1 > 0.0) grad += params.nu1 * H;
      H -= eta1 * grad;
      H = (H.array() - eta1 * params.lambda_h_l1).cwiseMax(0.0).matrix();
    }

    // R-step: exact minimization.
    WH.noalias() = W * H;
    R = V - WH;
    prox_outlier_inplace(R, lambda, outliers, 1.0 + params.nu2);

    // W-step: projected gradient with eta2 = kappa / ||H H^T||_F.
    const Matrix HHt = H * H.transpose();
    const double lip_w = HHt.norm();
    if (lip_w > 0.0) {
      const double eta2 = params.kappa_tilde / lip_w;
      const Matrix G = (WH + R - V) * H.transpose();
      W -= eta2 * G;
      project_columns(W, params.constraint);
    }

    const double cur = batch_objective(V, W, H, R, params);
    out.objective.push_back(cur);
    out.iterations = k;
    recorder.record(out, k, cur, W, H, W_prev);
    if (relative_change_below(prev, cur, opts.tol)) {
      out.converged = true;
      break;
    }
    prev = cur;
  }
  out.W = std::move(W);
  out.H = std::move(H);
  out.R = std::move(R);
  return out;
}

BatchResult badmm(const Matrix& V, const HyperParams& params,
                  const BatchOptions& opts) {
  Init init = initialize(V, params, opts);
  const Index F = V.rows();
  const Index N = V.cols();
  const Index K = params.K;
  const double lambda = params.lambda_for(F);
  const OutlierSet& outliers = params.constraint.outlier;
  const double rho1 = params.rho1;
  const double rho2 = params.rho2;
  const double rho3 = params.rho3;

  Matrix W = init.W;
  Matrix H = init.H;
  Matrix R = Matrix::Zero(F, N);
  Matrix U = H;
  Matrix Q = R;
  Matrix Psi = W;
  Matrix dual_h = Matrix::Zero(K, N);
  Matrix dual_r = Matrix::Zero(F, N);
  Matrix dual_w = Matrix::Zero(F, K);

  BatchResult out;
  double prev = batch_objective(V, Psi, U, Q, params);
  out.objective.push_back(prev);
  TraceRecorder recorder(V, opts);

  for (Index k = 1; k <= opts.max_outer; ++k) {
    const Matrix Psi_prev = Psi;

    Matrix sys_h = W.transpose() * W;
    sys_h.diagonal().array() += rho1 + params.nu1;
    const Eigen::LLT<Matrix> fac_h(sys_h);
    H = fac_h.solve(W.transpose() * (V - R) + rho1 * U - dual_h);

    R = rho2 * Q + V - dual_r;
    R.noalias() -= W * H;
    soft_threshold_inplace(R, lambda);
    R /= 1.0 + rho2 + params.nu2;

    Matrix sys_w = H * H.transpose();
    sys_w.diagonal().array() += rho3;
    const Eigen::LLT<Matrix> fac_w(sys_w);
    const Matrix rhs = (V - R) * H.transpose() - dual_w + rho3 * Psi;
    W = fac_w.solve(rhs.transpose()).transpose();

    U = (H.array() + (dual_h.array() - params.lambda_h_l1) / rho1)
            .cwiseMax(0.0)
            .matrix();
    Q = R + dual_r / rho2;
    clamp_outlier_inplace(Q, outliers);
    Psi = W + dual_w / rho3;
    project_columns(Psi, params.constraint);

    dual_h += rho1 * (H - U);
    dual_r += rho2 * (R - Q);
    dual_w += rho3 * (W - Psi);

    const double cur = batch_objective(V, Psi, U, Q, params);
    out.objective.push_back(cur);
    out.iterations = k;
    recorder.record(out, k, cur, Psi, U, Psi_prev);
    if (relative_change_below(prev, cur, opts.tol)) {
      out.converged = true;
      break;
    }
    prev = cur;
  }
  out.W = std::move(Psi);
  out.H = std::move(U);
  out.R = std::move(Q);
  return out;
}

}  // namespace ronmf
