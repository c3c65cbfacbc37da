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

#include "ronmf/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ronmf/rng.hpp"

namespace ronmf {
namespace {

Matrix half_normal(Index rows, Index cols, double scale, Rng& gen) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix out(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) out(i, j) = scale * std::abs(normal(gen));
  }
  return out;
}

Matrix clip01(const Matrix& X) { return X.cwiseMax(0.0).cwiseMin(1.0); }

// First k entries of a uniformly random permutation of [0, n), sorted.
std::vector<Index> choose_subset(Index n, Index k, Rng& gen) {
  std::vector<Index> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), Index{0});
  for (Index i = 0; i < k; ++i) {
    std::uniform_int_distribution<Index> pick(i, n - 1);
    std::swap(idx[i], idx[pick(gen)]);
  }
  idx.resize(static_cast<std::size_t>(k));
  std::sort(idx.begin(), idx.end());
  return idx;
}

Matrix outlier_matrix(Index F, Index N, double nu, double nu_tilde, double M,
                      Rng& gen) {
  const auto n_cols = static_cast<Index>(std::floor(nu * static_cast<double>(N)));
  const auto support =
      static_cast<Index>(std::floor(nu_tilde * static_cast<double>(F)));
  Matrix R = Matrix::Zero(F, N);
  if (n_cols == 0 || support == 0) return R;
  std::uniform_real_distribution<double> value(-M, M);
  for (Index j : choose_subset(N, n_cols, gen)) {
    for (Index i : choose_subset(F, support, gen)) {
      double x = value(gen);
      while (x == 0.0) x = value(gen);
      R(i, j) = x;
    }
  }
  return R;
}

void check_fractions(double nu, double nu_tilde) {
  if (!(nu >= 0.0 && nu <= 1.0)) {
    throw InvalidArgument("nu must be in [0, 1]");
  }
  if (!(nu_tilde >= 0.0 && nu_tilde <= 1.0)) {
    throw InvalidArgument("nu_tilde must be in [0, 1]");
  }
}

}  // namespace

void SynthSpec::validate() const {
  if (F < 1 || K_true < 1 || N < 1) {
    throw InvalidArgument("SynthSpec: F, K_true and N must be >= 1");
  }
  check_fractions(nu, nu_tilde);
}

SynthData generate_synthetic(const SynthSpec& spec) {
  spec.validate();
  const double scale = 1.0 / std::sqrt(static_cast<double>(spec.K_true));
  Rng w_gen = make_rng(spec.seed, "synth.W");
  Rng h_gen = make_rng(spec.seed, "synth.H");
  Rng r_gen = make_rng(spec.seed, "synth.R");
  Rng n_gen = make_rng(spec.seed, "synth.noise");

  const Matrix W0 = half_normal(spec.F, spec.K_true, scale, w_gen);
  const Matrix H0 = half_normal(spec.K_true, spec.N, scale, h_gen);

  SynthData out;
  out.V_clean = clip01(W0 * H0);
  out.R_true =
      outlier_matrix(spec.F, spec.N, spec.nu, spec.nu_tilde, 1.0, r_gen);
  Matrix sum = out.V_clean + out.R_true;
  if (spec.noise) {
    std::normal_distribution<double> normal(0.0, 1.0);
    for (Index j = 0; j < sum.cols(); ++j) {
      for (Index i = 0; i < sum.rows(); ++i) sum(i, j) += normal(n_gen);
    }
  }
  out.V = clip01(sum);
  return out;
}

Contaminated contaminate(const Matrix& V_clean, double nu, double nu_tilde,
                         double M, std::uint64_t seed) {
  check_fractions(nu, nu_tilde);
  if (!(M > 0.0) || !std::isfinite(M)) {
    throw InvalidArgument("contaminate: M must be finite and > 0");
  }
  require_finite(V_clean, "V_clean");
  Rng gen = make_rng(seed, "contaminate");
  Contaminated out;
  out.R_true =
      outlier_matrix(V_clean.rows(), V_clean.cols(), nu, nu_tilde, M, gen);
  out.V = clip01(V_clean + out.R_true);
  return out;
}

Vector PreparedStream::sample(const Matrix& source, Index i) const {
  return source.col(order[static_cast<std::size_t>(i)]) *
         scale[static_cast<std::size_t>(i)];
}

Matrix PreparedStream::materialize(const Matrix& source) const {
  Matrix out(source.rows(), size());
  for (Index i = 0; i < size(); ++i) out.col(i) = sample(source, i);
  return out;
}

PreparedStream prepare_stream(const Matrix& V, Index replicate, bool shuffle,
                              std::uint64_t seed, bool normalize) {
  if (V.cols() == 0 || V.rows() == 0) {
    throw InvalidArgument("prepare_stream: empty matrix");
  }
  if (replicate < 1) throw InvalidArgument("prepare_stream: replicate must be >= 1");
  const Index N = V.cols();
  PreparedStream out;
  out.order.reserve(static_cast<std::size_t>(N * replicate));
  for (Index p = 0; p < replicate; ++p) {
    for (Index j = 0; j < N; ++j) out.order.push_back(j);
  }
  if (shuffle) {
    Rng gen = make_rng(seed, "stream.shuffle");
    std::shuffle(out.order.begin(), out.order.end(), gen);
  }
  std::vector<double> col_scale(static_cast<std::size_t>(N), 1.0);
  if (normalize) {
    for (Index j = 0; j < N; ++j) {
      const double mx = V.col(j).maxCoeff();
      if (mx > 0.0) col_scale[static_cast<std::size_t>(j)] = 1.0 / mx;
    }
  }
  out.scale.reserve(out.order.size());
  for (Index j : out.order) out.scale.push_back(col_scale[static_cast<std::size_t>(j)]);
  return out;
}

Index psnr_rule_of_thumb_tau(Index N) {
  if (N < 1) throw InvalidArgument("psnr_rule_of_thumb_tau: N must be >= 1");
  const auto tau = static_cast<Index>(std::llround(5e-5 * static_cast<double>(N)));
  return std::max<Index>(1, tau);
}

}  // namespace ronmf
