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

#include "ronmf/dict_update.hpp"

#include <Eigen/Cholesky>

#include "ronmf/encode.hpp"
#include "ronmf/prox.hpp"

namespace ronmf {
namespace {

void check_shapes(const Dictionary& W, const SufficientStats& stats) {
  const Index F = W.rows();
  const Index K = W.cols();
  if (stats.A.rows() != K || stats.A.cols() != K || stats.B.rows() != F ||
      stats.B.cols() != K) {
    throw DimensionError("dict_update: statistics do not match a " +
                         std::to_string(F) + "x" + std::to_string(K) +
                         " dictionary");
  }
}

// Same as dict_objective but reuses a precomputed W A.
double objective_with(const Matrix& W, const Matrix& WA, const Matrix& B) {
  return 0.5 * WA.cwiseProduct(W).sum() - W.cwiseProduct(B).sum();
}

}  // namespace

std::string to_string(DictSolver solver) {
  return solver == DictSolver::kPgd ? "pgd" : "admm";
}

double dict_objective(const Matrix& W, const Matrix& A, const Matrix& B) {
  if (A.rows() != W.cols() || B.rows() != W.rows() || B.cols() != W.cols()) {
    throw DimensionError("dict_objective: dimension mismatch");
  }
  return objective_with(W, W * A, B);
}

DictUpdateResult dict_update_pgd(const Dictionary& W_init,
                                 const SufficientStats& stats,
                                 const HyperParams& params) {
  check_shapes(W_init, stats);
  DictUpdateResult out{W_init, 0.0, 0, false};
  const Matrix& A = stats.A;
  const Matrix& B = stats.B;
  const double lipschitz = A.norm();

  Matrix W = W_init.W;
  Matrix WA = W * A;
  double prev = objective_with(W, WA, B) + stats.offset;
  if (lipschitz == 0.0) {
    out.objective = prev;
    out.converged = true;
    return out;
  }
  const double eta = params.kappa_tilde / lipschitz;

  for (Index k = 1; k <= params.max_iter_dict; ++k) {
    W -= eta * (WA - B);
    project_columns(W, W_init.constraint);
    WA.noalias() = W * A;
    const double cur = objective_with(W, WA, B) + stats.offset;
    out.iterations = k;
    if (relative_change_below(prev, cur, params.eps_dict)) {
      out.converged = true;
      prev = cur;
      break;
    }
    prev = cur;
  }
  out.dictionary.W = std::move(W);
  out.objective = prev;
  return out;
}

DictUpdateResult dict_update_admm(const Dictionary& W_init,
                                  const SufficientStats& stats,
                                  const HyperParams& params, Matrix* dual) {
  check_shapes(W_init, stats);
  DictUpdateResult out{W_init, 0.0, 0, false};
  const Matrix& A = stats.A;
  const Matrix& B = stats.B;
  const double rho = params.rho3;
  if (dual && dual->size() != 0 &&
      (dual->rows() != W_init.rows() || dual->cols() != W_init.cols())) {
    throw DimensionError("dict_update_admm: dual must match the dictionary");
  }

  Matrix Q = W_init.W;
  double prev = dict_objective(Q, A, B) + stats.offset;
  if (A.norm() == 0.0) {
    out.objective = prev;
    out.converged = true;
    return out;
  }

  Matrix system = A;
  system.diagonal().array() += rho;
  const Eigen::LLT<Matrix> factor(system);
  if (factor.info() != Eigen::Success) {
    throw Error("dict_update_admm: factorization of A + rho3 I failed");
  }

  Matrix D = (dual && dual->size() != 0)
                 ? *dual
                 : Matrix::Zero(Q.rows(), Q.cols()).eval();
  Matrix W;
  for (Index k = 1; k <= params.max_iter_dict; ++k) {
    // W (A + rho I) = B - D + rho Q, with A + rho I symmetric.
    W = factor.solve((B - D + rho * Q).transpose()).transpose();
    Q = W + D / rho;
    project_columns(Q, W_init.constraint);
    D += rho * (W - Q);
    const double cur = dict_objective(Q, A, B) + stats.offset;
    out.iterations = k;
    if (relative_change_below(prev, cur, params.eps_dict)) {
      out.converged = true;
      prev = cur;
      break;
    }
    prev = cur;
  }
  if (dual) *dual = std::move(D);
  out.dictionary.W = std::move(Q);
  out.objective = prev;
  return out;
}

DictUpdateResult dict_update(DictSolver solver, const Dictionary& W_init,
                             const SufficientStats& stats,
                             const HyperParams& params, Matrix* dual) {
  return solver == DictSolver::kPgd
             ? dict_update_pgd(W_init, stats, params)
             : dict_update_admm(W_init, stats, params, dual);
}

}  // namespace ronmf
