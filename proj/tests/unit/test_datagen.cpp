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

#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "ronmf/datagen.hpp"

using namespace ronmf;

namespace {

SynthSpec small_spec() {
  SynthSpec s;
  s.F = 40;
  s.K_true = 5;
  s.N = 60;
  s.nu = 0.5;
  s.nu_tilde = 0.2;
  s.seed = 3;
  return s;
}

Index nonzeros(const Vector& x) { return (x.array() != 0.0).count(); }

}  // namespace

TEST_SUITE("datagen") {

TEST_CASE("outlier counts follow the cardinality rule") {
  const SynthSpec s = small_spec();
  const SynthData d = generate_synthetic(s);
  Index contaminated = 0;
  for (Index j = 0; j < s.N; ++j) {
    const Index nz = nonzeros(d.R_true.col(j));
    if (nz == 0) continue;
    ++contaminated;
    CHECK(nz == 8);
  }
  CHECK(contaminated == 30);
  CHECK(d.R_true.cwiseAbs().maxCoeff() <= 1.0);
}

TEST_CASE("observed and clean data are clipped to the unit interval") {
  const SynthData d = generate_synthetic(small_spec());
  CHECK(d.V.minCoeff() >= 0.0);
  CHECK(d.V.maxCoeff() <= 1.0);
  CHECK(d.V_clean.minCoeff() >= 0.0);
  CHECK(d.V_clean.maxCoeff() <= 1.0);
}

TEST_CASE("empty support leaves only clipped noise") {
  SynthSpec s = small_spec();
  s.nu_tilde = 0.01;  // floor(0.4) = 0
  const SynthData d = generate_synthetic(s);
  CHECK(d.R_true.isZero());
  s.noise = false;
  const SynthData quiet = generate_synthetic(s);
  CHECK(quiet.V == quiet.V_clean);
}

TEST_CASE("clean data mean matches the half-normal factor scale") {
  // Each clean entry is (1/K) sum_k a_k b_k with a, b half-normal of unit
  // scale, so its mean is 2/pi. At K = 100 clipping at 1 is a 4.7 sigma
  // event. The grand mean over a 100 x 100 matrix has a standard error of
  // about 0.007 because rows share the dictionary factor.
  SynthSpec s;
  s.F = 100;
  s.K_true = 100;
  s.N = 100;
  s.nu = 0.0;
  s.nu_tilde = 0.0;
  s.noise = false;
  s.seed = 11;
  const SynthData d = generate_synthetic(s);
  CHECK(std::abs(d.V_clean.mean() - 2.0 / std::numbers::pi) <= 3 * 0.007);
}

TEST_CASE("generation is deterministic per seed") {
  const SynthData a = generate_synthetic(small_spec());
  const SynthData b = generate_synthetic(small_spec());
  CHECK(a.V == b.V);
  CHECK(a.R_true == b.R_true);
  SynthSpec other = small_spec();
  other.seed = 4;
  CHECK(generate_synthetic(other).V != a.V);
}

TEST_CASE("contamination") {
  SynthSpec s = small_spec();
  s.noise = false;
  const Matrix clean = generate_synthetic(s).V_clean;
  CHECK(contaminate(clean, 0.0, 0.2, 1.0, 1).V == clean);

  const Contaminated c = contaminate(clean, 0.5, 0.2, 1.0, 2);
  Index cols = 0;
  for (Index j = 0; j < clean.cols(); ++j) {
    const Index nz = nonzeros(c.R_true.col(j));
    if (nz > 0) {
      ++cols;
      CHECK(nz == 8);
    }
    const Index changed = ((c.V.col(j) - clean.col(j)).array() != 0.0).count();
    CHECK(changed <= 8);
  }
  CHECK(cols == 30);
  CHECK(c.V.minCoeff() >= 0.0);
  CHECK(c.V.maxCoeff() <= 1.0);
}

TEST_CASE("stream preparation") {
  Matrix V(2, 3);
  V << 0.5, 0.0, 0.2,
       0.25, 0.0, 0.1;
  const PreparedStream plain = prepare_stream(V, 1, false, 0);
  REQUIRE(plain.size() == 3);
  CHECK(plain.order == std::vector<Index>{0, 1, 2});
  CHECK(plain.sample(V, 0)[0] == doctest::Approx(1.0));
  CHECK(plain.sample(V, 0)[1] == doctest::Approx(0.5));
  CHECK(plain.sample(V, 1).isZero());

  const PreparedStream shuffled = prepare_stream(V, 4, true, 9);
  REQUIRE(shuffled.size() == 12);
  std::vector<Index> sorted = shuffled.order;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == std::vector<Index>{0, 0, 0, 0, 1, 1, 1, 1, 2, 2, 2, 2});
  CHECK(shuffled.materialize(V).cols() == 12);
}

TEST_CASE("rule of thumb mini-batch size") {
  CHECK(psnr_rule_of_thumb_tau(100000) == 5);
  CHECK(psnr_rule_of_thumb_tau(100) == 1);
  CHECK(psnr_rule_of_thumb_tau(20000) == 1);
}

}  // TEST_SUITE
