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

#include "ronmf/metrics.hpp"

#include <cmath>
#include <cstdio>

namespace ronmf {
namespace {

void check_reconstruction(const Matrix& V, const Matrix& W, const Matrix& H,
                          const char* who) {
  if (W.cols() != H.rows() || W.rows() != V.rows() || H.cols() != V.cols()) {
    throw DimensionError(std::string(who) + ": dimension mismatch");
  }
}

}  // namespace

double psnr_from_mse(double mse) {
  if (mse < 0.0 || std::isnan(mse)) throw InvalidArgument("psnr: negative mse");
  if (mse == 0.0) return kInf;
  return -10.0 * std::log10(mse);
}

double psnr_batch(const Matrix& V_clean, const Matrix& W, const Matrix& H) {
  check_reconstruction(V_clean, W, H, "psnr_batch");
  const double denom = static_cast<double>(V_clean.rows() * V_clean.cols());
  return psnr_from_mse((V_clean - W * H).squaredNorm() / denom);
}

double psnr_online(const Matrix& V_clean, const Matrix& W_N,
                   const Matrix& H_history) {
  if (H_history.size() == 0) {
    throw InvalidArgument("psnr_online: coefficient history is empty");
  }
  check_reconstruction(V_clean, W_N, H_history, "psnr_online");
  double total = 0.0;
  for (Index i = 0; i < V_clean.cols(); ++i) {
    total += (V_clean.col(i) - W_N * H_history.col(i)).squaredNorm();
  }
  const double denom = static_cast<double>(V_clean.rows() * V_clean.cols());
  return psnr_from_mse(total / denom);
}

Matrix reconstruct(const Matrix& W, const Matrix& H) {
  if (W.cols() != H.rows()) throw DimensionError("reconstruct: dimension mismatch");
  return W * H;
}

Matrix residual_outliers(const Matrix& V, const Matrix& W, const Matrix& H) {
  check_reconstruction(V, W, H, "residual_outliers");
  return V - W * H;
}

std::string format_real(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

}  // namespace ronmf
