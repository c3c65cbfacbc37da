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

#include <benchmark/benchmark.h>

#include <random>

#include "ronmf/ronmf.hpp"

namespace {

using namespace ronmf;

Matrix uniform(Index rows, Index cols, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Matrix M(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) M(i, j) = u(gen);
  }
  return M;
}

Matrix unit_dictionary(Index F, Index K, std::uint64_t seed) {
  Matrix W = uniform(F, K, seed);
  project_columns(W, ConstraintSpec{});
  return W;
}

void BM_Encode(benchmark::State& state) {
  const Index F = state.range(0);
  const bool admm = state.range(1) != 0;
  EncodeConfig cfg;
  cfg.solver = admm ? EncodeSolver::kAdmm : EncodeSolver::kPgd;
  cfg.params.K = 49;
  const Encoder enc(unit_dictionary(F, 49, 1), cfg);
  const Matrix V = uniform(F, 64, 2);
  Index j = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(enc.encode(V.col(j)));
    j = (j + 1) % V.cols();
  }
  state.SetLabel(admm ? "admm" : "pgd");
}
BENCHMARK(BM_Encode)->ArgsProduct({{100, 400}, {0, 1}});

void BM_DictUpdate(benchmark::State& state) {
  const Index F = state.range(0);
  const bool admm = state.range(1) != 0;
  const Index K = 49;
  const Matrix H = uniform(K, 200, 3);
  const Matrix Y = uniform(F, 200, 4);
  SufficientStats stats = SufficientStats::zeros(F, K);
  stats.fold(H, Y, Vector::Zero(200));
  HyperParams params;
  params.K = K;
  const Dictionary W0{unit_dictionary(F, K, 5), params.constraint};
  for (auto _ : state) {
    Matrix dual;
    benchmark::DoNotOptimize(dict_update(admm ? DictSolver::kAdmm : DictSolver::kPgd, W0,
                                         stats, params, admm ? &dual : nullptr));
  }
  state.SetLabel(admm ? "admm" : "pgd");
}
BENCHMARK(BM_DictUpdate)->ArgsProduct({{100, 400}, {0, 1}})->Unit(benchmark::kMicrosecond);

void BM_OnlineStep(benchmark::State& state) {
  const Index F = 400;
  const Index tau = state.range(0);
  HyperParams params;
  params.K = 49;
  params.tau = tau;
  const Matrix V = uniform(F, 1000 * tau, 6);
  OnlineState online = init_state(F, params);
  Index j = 0;
  for (auto _ : state) {
    if (j + tau > V.cols()) {
      state.PauseTiming();
      online = init_state(F, params);
      j = 0;
      state.ResumeTiming();
    }
    benchmark::DoNotOptimize(step(online, V.middleCols(j, tau), StepOptions{}));
    j += tau;
  }
  state.SetItemsProcessed(state.iterations() * tau);
}
BENCHMARK(BM_OnlineStep)->Arg(1)->Arg(5)->Unit(benchmark::kMicrosecond);

void BM_SimplexProjection(benchmark::State& state) {
  const Matrix Y = uniform(state.range(0), 16, 7);
  Index j = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(project_simplex(Y.col(j)));
    j = (j + 1) % Y.cols();
  }
}
BENCHMARK(BM_SimplexProjection)->Arg(400);

}  // namespace

BENCHMARK_MAIN();
