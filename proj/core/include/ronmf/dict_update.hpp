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

#ifndef RONMF_DICT_UPDATE_HPP_
#define RONMF_DICT_UPDATE_HPP_

#include "ronmf/types.hpp"

namespace ronmf {

enum class DictSolver { kPgd, kAdmm };

struct DictUpdateResult {
  Dictionary dictionary;
  double objective = 0.0;  // p(W) + stats.offset at the returned iterate
  Index iterations = 0;
  bool converged = false;
};

/// p(W) = 1/2 tr(W^T W A) - tr(W^T B).
double dict_objective(const Matrix& W, const Matrix& A, const Matrix& B);

/// Projected gradient on p with step kappa_tilde / ||A||_F, warm-started at
/// W_init. Stops on relative change of p + offset below eps_dict. Returns
/// W_init unchanged when ||A||_F = 0.
DictUpdateResult dict_update_pgd(const Dictionary& W_init,
                                 const SufficientStats& stats,
                                 const HyperParams& params);

/// ADMM with the split W = Q; the projected iterate Q is returned. When
/// `dual` is non-null it holds the scaled-in multiplier D on entry (empty
/// means zero) and receives the final multiplier, so consecutive calls can
/// continue from the previous dual state.
DictUpdateResult dict_update_admm(const Dictionary& W_init,
                                  const SufficientStats& stats,
                                  const HyperParams& params,
                                  Matrix* dual = nullptr);

DictUpdateResult dict_update(DictSolver solver, const Dictionary& W_init,
                             const SufficientStats& stats,
                             const HyperParams& params,
                             Matrix* dual = nullptr);

std::string to_string(DictSolver solver);

}  // namespace ronmf

#endif  // RONMF_DICT_UPDATE_HPP_
