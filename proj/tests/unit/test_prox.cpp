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

#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "ronmf/prox.hpp"
#include "test_util.hpp"

using namespace ronmf;
using Eigen::Vector2d;
using Eigen::Vector3d;

namespace {

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

void check_close(const Vector& a, const Vector& b, double tol) {
  REQUIRE(a.size() == b.size());
  CHECK((a - b).lpNorm<Eigen::Infinity>() <= tol);
}

}  // namespace

TEST_SUITE("proximal_ops") {

TEST_CASE("soft threshold definition cases") {
  check_close(soft_threshold(vec({2.0, -0.5, 0.0}), 1.0), vec({1.0, 0.0, 0.0}), 0.0);
  const Vector x = vec({0.3, -1.7, 4.0});
  check_close(soft_threshold(x, 0.0), x, 0.0);
  CHECK(soft_threshold(vec({0.3}), 0.25)[0] == doctest::Approx(0.05));
  CHECK(oracle::soft_threshold(vec({0.3}), 0.25)[0] == doctest::Approx(0.05).epsilon(1e-4));
  CHECK_THROWS_AS(soft_threshold(x, -1.0), InvalidArgument);
}

TEST_CASE("soft threshold is nonexpansive") {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Vector x = testing::uniform_vector(6, gen, -3, 3);
    const Vector y = testing::uniform_vector(6, gen, -3, 3);
    CHECK((soft_threshold(x, 0.7) - soft_threshold(y, 0.7)).norm() <= (x - y).norm() + 1e-15);
  }
}

TEST_CASE("box soft threshold branches") {
  CHECK(box_soft_threshold(vec({0.5}), 1.0, 2.0)[0] == 0.0);
  CHECK(box_soft_threshold(vec({2.5}), 1.0, 2.0)[0] == doctest::Approx(1.5));
  CHECK(box_soft_threshold(vec({4.0}), 1.0, 2.0)[0] == 2.0);
  CHECK(box_soft_threshold(vec({-4.0}), 1.0, 2.0)[0] == -2.0);
  // Ties at |x| = lam and |x| = lam + M land on the middle branch.
  CHECK(box_soft_threshold(vec({1.0}), 1.0, 2.0)[0] == 0.0);
  CHECK(box_soft_threshold(vec({3.0}), 1.0, 2.0)[0] == 2.0);
  CHECK_THROWS_AS(box_soft_threshold(vec({1.0}), 1.0, 0.0), InvalidArgument);
  CHECK_THROWS_AS(box_soft_threshold(vec({1.0}), -0.1, 1.0), InvalidArgument);
}

TEST_CASE("box soft threshold matches the scalar grid minimizer") {
  std::mt19937_64 gen(12);
  std::uniform_real_distribution<double> u(-4.0, 4.0), pos(0.05, 2.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double x = u(gen), lam = pos(gen), M = pos(gen);
    const double z = oracle::grid_argmin(
        [&](double s) { return 0.5 * (s - x) * (s - x) + lam * std::abs(s); }, -M, M, 1e-4);
    CHECK(std::abs(box_soft_threshold(vec({x}), lam, M)[0] - z) <= 2e-4);
  }
}

TEST_CASE("simple projections") {
  check_close(project_nonneg(vec({-1.0, 2.0})), vec({0.0, 2.0}), 0.0);
  check_close(project_nonneg(vec({0.0, 0.0})), vec({0.0, 0.0}), 0.0);
  std::mt19937_64 gen(13);
  const Vector x = testing::uniform_vector(6, gen, -1, 1);
  check_close(project_nonneg(x), oracle::project_nonneg(x), 1e-6);

  CHECK(project_box(vec({3.0}), 1.0)[0] == 1.0);
  CHECK(project_box(vec({-0.5}), 1.0)[0] == -0.5);
  CHECK(project_box(vec({-0.5}), 1.0, true)[0] == 0.0);
}

TEST_CASE("nonnegative unit ball projection") {
  check_close(project_nonneg_l2_ball(vec({0.3, 0.4})), vec({0.3, 0.4}), 1e-15);
  check_close(project_nonneg_l2_ball(vec({3.0, 4.0})), vec({0.6, 0.8}), 1e-15);
  check_close(project_nonneg_l2_ball(vec({-1.0, 2.0})), vec({0.0, 1.0}), 1e-15);
  const Vector grid = oracle::nearest_feasible_grid_point(
      vec({-1.0, 2.0}),
      [](const Vector& z) { return z.minCoeff() >= 0.0 && z.squaredNorm() <= 1.0; }, 0.0, 1.0);
  check_close(grid, vec({0.0, 1.0}), 2e-3);
}

TEST_CASE("simplex projection") {
  check_close(project_simplex(vec({1.0, 0.0})), vec({1.0, 0.0}), 1e-15);
  check_close(project_simplex(vec({1.0, 1.0})), vec({0.5, 0.5}), 1e-15);
  const Vector y = vec({0.8, 0.1, -0.2});
  check_close(project_simplex(y), oracle::project_simplex(y), 2e-3);
  const Vector grid = oracle::nearest_feasible_grid_point(
      y,
      [](const Vector& z) { return std::abs(z.sum() - 1.0) <= 5e-4; }, 0.0, 1.0);
  check_close(project_simplex(y), grid, 2e-3);
}

TEST_CASE("elastic net ball projection") {
  check_close(project_elastic_net_ball(vec({3.0, 4.0}), 0.0, 2.0), vec({0.6, 0.8}), 1e-9);
  check_close(project_elastic_net_ball(vec({2.0, 0.0}), 1.0, 0.0), vec({1.0, 0.0}), 1e-9);
  std::mt19937_64 gen(14);
  for (int trial = 0; trial < 10; ++trial) {
    const Vector y = testing::uniform_vector(3, gen, -1, 2);
    check_close(project_elastic_net_ball(y, 1.0, 1.0),
                oracle::project_elastic_net_ball(y, 1.0, 1.0), 2e-3);
  }
  CHECK_THROWS_AS(project_elastic_net_ball(vec({1.0}), 0.0, 0.0), InvalidArgument);
}

TEST_CASE("projections are idempotent and satisfy the variational inequality") {
  std::mt19937_64 gen(15);
  std::vector<ConstraintSpec> specs(4);
  specs[1].kind = DictConstraint::kNonnegOrthant;
  specs[2].kind = DictConstraint::kProbabilitySimplex;
  specs[3] = ConstraintSpec::elastic_net(0.5, 1.5);
  for (const auto& spec : specs) {
    CAPTURE(to_string(spec.kind));
    for (int trial = 0; trial < 20; ++trial) {
      const Vector y = testing::uniform_vector(6, gen, -2, 2);
      const Vector p = project_column(y, spec);
      CHECK(feasible_column(p, spec));
      check_close(project_column(p, spec), p, 1e-9);
      for (int k = 0; k < 100; ++k) {
        const Vector z = oracle::random_feasible_column(6, spec, gen);
        CHECK((y - p).dot(z - p) <= 1e-8);
      }
    }
  }
}

TEST_CASE("outlier prox matches the grid oracle for every set") {
  std::mt19937_64 gen(16);
  const std::vector<OutlierSet> sets = {{OutlierKind::kSignedBox, 1.0},
                                        {OutlierKind::kNonnegBox, 0.5},
                                        {OutlierKind::kUnbounded, 1.0}};
  for (const auto& set : sets) {
    for (int trial = 0; trial < 10; ++trial) {
      const Vector x = testing::uniform_vector(5, gen, -3, 3);
      const Vector lib = prox_outlier(x, 0.4, set, 2.0);
      check_close(lib, oracle::prox_outlier(x, 0.4, set, 2.0), 2e-3);
      CHECK(feasible(lib, set));
    }
  }
  check_close(project_outlier(vec({2.0, -3.0}), {OutlierKind::kNonnegBox, 1.0}),
              vec({1.0, 0.0}), 0.0);
}

TEST_CASE("project_columns makes every column feasible") {
  std::mt19937_64 gen(17);
  Matrix W = testing::uniform_matrix(7, 4, gen, -1, 3);
  ConstraintSpec spec;
  project_columns(W, spec);
  CHECK(feasible(W, spec));
}

TEST_CASE("spectral norm squared") {
  CHECK(spectral_norm_sq(Matrix::Identity(2, 2)) == doctest::Approx(1.0));
  CHECK(spectral_norm_sq(Vector2d(2.0, 3.0).asDiagonal().toDenseMatrix()) ==
        doctest::Approx(9.0));
  CHECK(spectral_norm_sq(Matrix::Zero(3, 2)) == 0.0);
  std::mt19937_64 gen(18);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix W = testing::uniform_matrix(5, 3, gen, -1, 1);
    const double expected = oracle::largest_eigenvalue_jacobi(W.transpose() * W);
    CHECK(testing::rel_diff(spectral_norm_sq(W), expected) <= 1e-4);
  }
}

}  // TEST_SUITE
