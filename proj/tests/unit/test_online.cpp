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
#include "ronmf/online.hpp"
#include "test_util.hpp"

using namespace ronmf;

namespace {

HyperParams small_params(Index K, Index tau = 1) {
  HyperParams p;
  p.K = K;
  p.tau = tau;
  p.seed = 5;
  return p;
}

}  // namespace

TEST_SUITE("online_engine") {

TEST_CASE("initial state") {
  const HyperParams p = small_params(4);
  const OnlineState a = init_state(9, p);
  const OnlineState b = init_state(9, p);
  CHECK(a.stats.A.isZero());
  CHECK(a.stats.B.isZero());
  CHECK(a.t == 0);
  CHECK(feasible(a.dict.W, p.constraint));
  CHECK(a.dict.W == b.dict.W);
  HyperParams other = p;
  other.seed = 6;
  CHECK(init_state(9, other).dict.W != a.dict.W);
  CHECK_THROWS_AS(init_state(0, p), InvalidArgument);
}

TEST_CASE("first step stores the single sample statistics exactly") {
  std::mt19937_64 gen(41);
  OnlineState st = init_state(6, small_params(3), HistoryMode::kFull);
  const Matrix v = testing::uniform_matrix(6, 1, gen);
  step(st, v, StepOptions{});
  const Vector& h = st.history->h[0];
  const Vector& r = st.history->r[0];
  CHECK(st.t == 1);
  CHECK(st.stats.samples_seen == 1);
  CHECK((st.stats.A - h * h.transpose()).norm() == 0.0);
  CHECK((st.stats.B - (v.col(0) - r) * h.transpose()).norm() == 0.0);
}

TEST_CASE("identical samples in one batch average to a single term") {
  std::mt19937_64 gen(42);
  OnlineState st = init_state(5, small_params(2, 2), HistoryMode::kFull);
  const Vector v = testing::uniform_vector(5, gen);
  Matrix batch(5, 2);
  batch << v, v;
  step(st, batch, StepOptions{});
  const Vector& h = st.history->h[0];
  CHECK(st.t == 2);
  CHECK((st.stats.A - h * h.transpose()).norm() <= 1e-15);
}

TEST_CASE("statistics equal the means of the retained terms") {
  std::mt19937_64 gen(43);
  for (auto solver : {DictSolver::kPgd, DictSolver::kAdmm}) {
    OnlineState st = init_state(7, small_params(3, 3), HistoryMode::kFull);
    StepOptions opts;
    opts.dict_solver = solver;
    for (int s = 0; s < 8; ++s) step(st, testing::uniform_matrix(7, 3, gen), opts);
    Matrix A = Matrix::Zero(3, 3), B = Matrix::Zero(7, 3);
    const auto& hist = *st.history;
    for (std::size_t i = 0; i < hist.h.size(); ++i) {
      A += hist.h[i] * hist.h[i].transpose();
      B += (hist.v[i] - hist.r[i]) * hist.h[i].transpose();
    }
    const double n = static_cast<double>(hist.h.size());
    CHECK((st.stats.A - A / n).norm() <= 1e-12);
    CHECK((st.stats.B - B / n).norm() <= 1e-12);
    CHECK(feasible(st.dict.W, st.params.constraint));
  }
}

TEST_CASE("surrogate trace form equals the definition") {
  std::mt19937_64 gen(44);
  OnlineState st = init_state(6, small_params(3), HistoryMode::kFull);
  for (int s = 0; s < 20; ++s) step(st, testing::uniform_matrix(6, 1, gen), StepOptions{});
  const double lambda = st.params.lambda_for(6);
  const Matrix W = testing::uniform_matrix(6, 3, gen);
  double direct = 0.0;
  const auto& hist = *st.history;
  for (std::size_t i = 0; i < hist.h.size(); ++i) {
    direct += oracle::loss(hist.v[i], W, hist.h[i], hist.r[i], lambda);
  }
  direct /= static_cast<double>(hist.h.size());
  CHECK(std::abs(surrogate_loss(st, W) - direct) <= 1e-10);
  CHECK(surrogate_loss(st) >= 0.0);
  CHECK(st.trace.back().surrogate_loss == doctest::Approx(surrogate_loss(st)));
}

TEST_CASE("surrogate of an exact single sample is zero") {
  OnlineState st = init_state(3, small_params(3));
  st.dict.W = Matrix::Identity(3, 3);
  st.params.lambda = 1.0;
  st.params.eps_encode = 1e-14;
  st.params.max_iter_encode = 10000;
  step(st, Eigen::Vector3d(0.2, 0.3, 0.1), StepOptions{});
  CHECK(surrogate_loss(st) <= 1e-10);
  CHECK_THROWS_AS(surrogate_loss(init_state(3, small_params(3))), InvalidArgument);
}

TEST_CASE("regret loss") {
  std::mt19937_64 gen(45);
  OnlineState st = init_state(5, small_params(2), HistoryMode::kCodes);
  const Matrix V = testing::uniform_matrix(5, 6, gen);
  for (Index j = 0; j < 6; ++j) step(st, V.col(j), StepOptions{});
  const Matrix H = coefficient_history(st);
  const Matrix recon = st.dict.W * H;
  CHECK(regret_loss(st, recon) == doctest::Approx(0.0));

  double expected = 0.0;
  for (Index j = 0; j < 6; ++j) {
    expected += oracle::loss(V.col(j), st.dict.W, H.col(j), Vector::Zero(5), 0.0);
  }
  expected /= 6.0;
  CHECK(regret_loss(st, V) == doctest::Approx(expected).epsilon(1e-12));

  const Vector e = Vector::Constant(5, 0.1);
  OnlineState one = init_state(5, small_params(2), HistoryMode::kCodes);
  step(one, V.col(0), StepOptions{});
  const Matrix clean = one.dict.W * coefficient_history(one) + e;
  CHECK(regret_loss(one, clean) == doctest::Approx(0.5 * e.squaredNorm()));

  CHECK_THROWS_AS(regret_loss(init_state(5, small_params(2)), V), InvalidArgument);
}

TEST_CASE("tracked regret equals the retained evaluation") {
  std::mt19937_64 gen(46);
  OnlineState st = init_state(5, small_params(2, 2), HistoryMode::kCodes);
  const Matrix V = testing::uniform_matrix(5, 8, gen);
  const Matrix C = testing::uniform_matrix(5, 8, gen);
  for (Index j = 0; j < 8; j += 2) {
    const Matrix vb = V.middleCols(j, 2), cb = C.middleCols(j, 2);
    step(st, vb, StepOptions{}, &cb);
  }
  CHECK(tracked_regret_loss(st) == doctest::Approx(regret_loss(st, C)).epsilon(1e-10));
  REQUIRE(st.trace.back().regret_loss.has_value());
}

TEST_CASE("run_stream edge cases") {
  std::mt19937_64 gen(47);
  const HyperParams p = small_params(2, 4);
  OnlineState st = init_state(5, p);
  const Matrix W0 = st.dict.W;
  const Matrix empty(5, 0);
  MatrixSource none(empty);
  CHECK(run_stream(st, none, StepOptions{}).W == W0);
  CHECK(st.trace.empty());

  const Matrix V = testing::uniform_matrix(5, 4, gen);
  MatrixSource src(V);
  std::vector<TraceRecord> rows;
  run_stream(st, src, StepOptions{}, [&](const TraceRecord& r) { rows.push_back(r); });
  CHECK(rows.size() == 1);
  CHECK(rows[0].t == 4);

  // Ten samples with tau = 4 leave a final batch of two.
  OnlineState tail = init_state(5, p);
  const Matrix V10 = testing::uniform_matrix(5, 10, gen);
  MatrixSource src10(V10);
  run_stream(tail, src10, StepOptions{});
  CHECK(tail.trace.size() == 3);
  CHECK(tail.t == 10);
}

TEST_CASE("replay with equal seeds is bit identical") {
  std::mt19937_64 gen(48);
  const Matrix V = testing::uniform_matrix(8, 30, gen);
  Matrix finals[2];
  for (auto& out : finals) {
    OnlineState st = init_state(8, small_params(3, 3));
    MatrixSource src(V);
    StepOptions opts;
    opts.encode_solver = EncodeSolver::kAdmm;
    opts.dict_solver = DictSolver::kAdmm;
    out = run_stream(st, src, opts).W;
  }
  CHECK(finals[0] == finals[1]);
}

TEST_CASE("threaded encoding matches the serial result") {
  std::mt19937_64 gen(49);
  const Matrix V = testing::uniform_matrix(6, 24, gen);
  OnlineState serial = init_state(6, small_params(3, 6));
  OnlineState threaded = init_state(6, small_params(3, 6));
  StepOptions opts;
  MatrixSource a(V), b(V);
  run_stream(serial, a, opts);
  opts.threads = 3;
  run_stream(threaded, b, opts);
  CHECK(serial.dict.W == threaded.dict.W);
}

TEST_CASE("malformed batches are rejected") {
  OnlineState st = init_state(4, small_params(2));
  CHECK_THROWS_AS(step(st, Matrix::Zero(3, 1), StepOptions{}), DimensionError);
  CHECK_THROWS_AS(step(st, Matrix::Zero(4, 0), StepOptions{}), InvalidArgument);
}

}  // TEST_SUITE
