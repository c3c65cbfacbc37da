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

#ifndef RONMF_ENCODE_HPP_
#define RONMF_ENCODE_HPP_

// Per-sample subproblem
//
//   min_{h >= 0, r in R}  1/2 ||v - W h - r||^2 + lambda ||r||_1
//                         (+ nu1/2 ||h||^2 + nu2/2 ||r||^2 + lambda_h ||h||_1)
//
// solved either by alternating a projected gradient step on h with the
// closed-form r-step, or by ADMM with the splits h = u, r = q.

#include <cstdint>

#include <Eigen/Cholesky>

#include "ronmf/types.hpp"

namespace ronmf {

enum class EncodeSolver { kPgd, kAdmm };
enum class InitMode { kZeros, kUniform01 };

struct EncodeConfig {
  EncodeSolver solver = EncodeSolver::kPgd;
  HyperParams params;
  InitMode h_init = InitMode::kZeros;
};

/// Caches everything that depends only on W (Gram matrix, Lipschitz
/// constant, ADMM factorization) so a mini-batch is encoded against one
/// factorization. Immutable after construction and safe to share between
/// threads.
class Encoder {
 public:
  Encoder(const Matrix& W, EncodeConfig cfg);

  /// `init_seed` only matters for InitMode::kUniform01.
  EncodeResult encode(const Vector& v, std::uint64_t init_seed = 0) const;

  double lipschitz() const { return lipschitz_; }
  const EncodeConfig& config() const { return cfg_; }

 private:
  EncodeResult encode_pgd(const Vector& v, Vector h) const;
  EncodeResult encode_admm(const Vector& v, Vector h) const;
  double objective(const Vector& v, const Vector& Wh, const Vector& h,
                   const Vector& r) const;

  Matrix W_;
  EncodeConfig cfg_;
  double lambda_;
  Matrix gram_;
  double lipschitz_ = 0.0;
  Eigen::LLT<Matrix> admm_factor_;
};

EncodeResult encode_pgd(const Vector& v, const Dictionary& W,
                        const EncodeConfig& cfg);
EncodeResult encode_admm(const Vector& v, const Dictionary& W,
                         const EncodeConfig& cfg);

/// Dispatches on cfg.solver.
EncodeResult encode(const Vector& v, const Dictionary& W,
                    const EncodeConfig& cfg);

/// True when |cur - prev| / prev < eps; a zero previous value counts as
/// converged only if the current one is zero too.
bool relative_change_below(double prev, double cur, double eps);

std::string to_string(EncodeSolver solver);

}  // namespace ronmf

#endif  // RONMF_ENCODE_HPP_
