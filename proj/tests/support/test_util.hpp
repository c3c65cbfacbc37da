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

#ifndef RONMF_TESTS_TEST_UTIL_HPP_
#define RONMF_TESTS_TEST_UTIL_HPP_

#include <random>

#include "ronmf/types.hpp"

namespace ronmf::testing {

inline Matrix uniform_matrix(Index rows, Index cols, std::mt19937_64& gen,
                             double lo = 0.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Matrix M(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) M(i, j) = u(gen);
  }
  return M;
}

inline Vector uniform_vector(Index n, std::mt19937_64& gen, double lo = 0.0,
                             double hi = 1.0) {
  return uniform_matrix(n, 1, gen, lo, hi).col(0);
}

/// Random dictionary with unit-norm nonnegative columns.
inline Matrix unit_columns(Index rows, Index cols, std::mt19937_64& gen) {
  Matrix W = uniform_matrix(rows, cols, gen);
  for (Index j = 0; j < cols; ++j) W.col(j) /= W.col(j).norm();
  return W;
}

inline double rel_diff(double a, double b, double floor = 1e-12) {
  return std::abs(a - b) / std::max(std::abs(b), floor);
}

}  // namespace ronmf::testing

#endif  // RONMF_TESTS_TEST_UTIL_HPP_
