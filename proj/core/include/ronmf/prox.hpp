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

#ifndef RONMF_PROX_HPP_
#define RONMF_PROX_HPP_

// Closed-form proximal and projection operators. All functions are pure.

#include "ronmf/types.hpp"

namespace ronmf {

/// Entrywise sign(x) * max(|x| - lam, 0). Throws if lam < 0.
Vector soft_threshold(const Vector& x, double lam);

/// Proximal map of lam|.| restricted to [-M, M]:
///   0                  if |x| <  lam
///   x - sign(x) lam    if lam <= |x| <= lam + M
///   sign(x) M          otherwise
/// M may be +inf, in which case this is plain soft-thresholding.
Vector box_soft_threshold(const Vector& x, double lam, double M);

/// Entrywise max(x, 0).
Vector project_nonneg(const Vector& x);

/// Projection onto {x >= 0, ||x||_2 <= 1}: P+(y) / max(1, ||P+(y)||).
Vector project_nonneg_l2_ball(const Vector& y);

/// Projection onto the probability simplex (sort-based threshold).
Vector project_simplex(const Vector& y);

/// Projection onto {x >= 0, g1 ||x||_1 + g2/2 ||x||_2^2 <= 1} by bisection on
/// the constraint multiplier. Throws if g1 = g2 = 0 or either is negative.
Vector project_elastic_net_ball(const Vector& y, double g1, double g2);

/// Entrywise clamp to [-M, M], or to [0, M] when `nonneg` is set.
Vector project_box(const Vector& x, double M, bool nonneg = false);

/// Projection onto an outlier set.
Vector project_outlier(const Vector& x, const OutlierSet& set);

/// argmin_r  scale/2 ||r - x/scale||^2 + lam ||r||_1  subject to r in `set`,
/// i.e. the r-step of the PGD encoder with a Tikhonov weight scale - 1.
Vector prox_outlier(const Vector& x, double lam, const OutlierSet& set,
                    double scale = 1.0);

/// Projection of one dictionary column onto the active constraint.
Vector project_column(const Vector& y, const ConstraintSpec& spec);

/// Projects every column of W in place.
void project_columns(Matrix& W, const ConstraintSpec& spec);

/// Largest eigenvalue of a symmetric PSD matrix by power iteration from the
/// all-ones vector; stops at relative change 1e-6 or 200 iterations.
double largest_eigenvalue_psd(const Matrix& G);

/// ||W||_2^2, the squared spectral norm, via power iteration on W^T W.
double spectral_norm_sq(const Matrix& W);

}  // namespace ronmf

#endif  // RONMF_PROX_HPP_
