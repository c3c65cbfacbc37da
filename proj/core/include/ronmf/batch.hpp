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

#ifndef RONMF_BATCH_HPP_
#define RONMF_BATCH_HPP_

// Batch robust NMF over the whole data matrix:
//
//   min 1/2 ||V - W H - R||_F^2 + lambda ||R||_{1,1}
//   s.t. H >= 0, R in the outlier box, W in C
//
// by block projected gradient (bpgd) or ADMM with splits H = U, R = Q,
// W = Psi (badmm).

#include <optional>
#include <vector>

#include "ronmf/types.hpp"

namespace ronmf {

struct BatchOptions {
  Index max_outer = 200;
  double tol = 1e-4;  // relative objective change
  /// Warm starts; by default W0 is drawn as for the online engine, H0 is
  /// U[0,1] and R0 = 0.
  std::optional<Matrix> W_init;
  std::optional<Matrix> H_init;
  /// Clean data for the regret column of the trace.
  const Matrix* clean = nullptr;
};

struct BatchResult {
  Matrix W;
  Matrix H;
  Matrix R;
  /// surrogate_loss holds the objective divided by N so traces compare
  /// with the online per-sample surrogate.
  std::vector<TraceRecord> trace;
  /// Raw objective, entry 0 at the initial point.
  std::vector<double> objective;
  Index iterations = 0;
  bool converged = false;
};

double batch_objective(const Matrix& V, const Matrix& W, const Matrix& H,
                       const Matrix& R, const HyperParams& params);

BatchResult bpgd(const Matrix& V, const HyperParams& params,
                 const BatchOptions& opts = {});

BatchResult badmm(const Matrix& V, const HyperParams& params,
                  const BatchOptions& opts = {});

}  // namespace ronmf

#endif  // RONMF_BATCH_HPP_
