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

#ifndef RONMF_DATAGEN_HPP_
#define RONMF_DATAGEN_HPP_

#include <cstdint>
#include <vector>

#include "ronmf/types.hpp"

namespace ronmf {

struct SynthSpec {
  Index F = 400;
  Index K_true = 49;
  Index N = 100000;
  double nu = 0.7;        // fraction of contaminated columns
  double nu_tilde = 0.1;  // outlier density inside a contaminated column
  bool noise = true;      // add i.i.d. standard normal observation noise
  std::uint64_t seed = 0;

  void validate() const;
};

struct SynthData {
  Matrix V;        // observed, clipped to [0, 1]
  Matrix V_clean;  // clip(W0 H0)
  Matrix R_true;   // outlier matrix before clipping
};

/// W0 and H0 have half-normal entries |N(0,1)| / sqrt(K_true);
/// V_clean = clip(W0 H0), V = clip(V_clean + R_true + noise).
SynthData generate_synthetic(const SynthSpec& spec);

struct Contaminated {
  Matrix V;
  Matrix R_true;
};

/// Picks floor(nu N) columns uniformly, gives each a uniform support of
/// floor(nu_tilde F) entries with values uniform on [-M, M], adds and clips
/// to [0, 1]. No observation noise.
Contaminated contaminate(const Matrix& V_clean, double nu, double nu_tilde,
                         double M, std::uint64_t seed);

/// A replicated, optionally shuffled and max-normalized view of a data
/// matrix. Sample i is column order[i] of the source times scale[i].
struct PreparedStream {
  std::vector<Index> order;
  std::vector<double> scale;

  Index size() const { return static_cast<Index>(order.size()); }
  Vector sample(const Matrix& source, Index i) const;
  Matrix materialize(const Matrix& source) const;
};

PreparedStream prepare_stream(const Matrix& V, Index replicate, bool shuffle,
                              std::uint64_t seed, bool normalize = true);

/// Mini-batch rule of thumb: max(1, round(5e-5 N)).
Index psnr_rule_of_thumb_tau(Index N);

}  // namespace ronmf

#endif  // RONMF_DATAGEN_HPP_
