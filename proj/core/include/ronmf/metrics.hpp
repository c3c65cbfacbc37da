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

#ifndef RONMF_METRICS_HPP_
#define RONMF_METRICS_HPP_

#include <string>

#include "ronmf/types.hpp"

namespace ronmf {

/// -10 log10(mse); +inf when mse == 0.
double psnr_from_mse(double mse);

/// PSNR of a batch reconstruction: -10 log10(||V_clean - W H||_F^2 / (F N)).
double psnr_batch(const Matrix& V_clean, const Matrix& W, const Matrix& H);

/// PSNR of an online run: the final dictionary against the coefficient
/// history, -10 log10(sum_i ||v_clean_i - W_N h_i||^2 / (F N)).
double psnr_online(const Matrix& V_clean, const Matrix& W_N,
                   const Matrix& H_history);

/// W H.
Matrix reconstruct(const Matrix& W, const Matrix& H);

/// V - W H; the outlier estimate for methods without an explicit R.
Matrix residual_outliers(const Matrix& V, const Matrix& W, const Matrix& H);

/// Decimal text for CSV output; +inf is written as "inf".
std::string format_real(double value);

}  // namespace ronmf

#endif  // RONMF_METRICS_HPP_
