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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "ronmf/io.hpp"
#include "ronmf/metrics.hpp"
#include "ronmf/online.hpp"
#include "test_util.hpp"

using namespace ronmf;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("ronmf_unit_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_SUITE("eval_metrics") {

TEST_CASE("PSNR of known mean squared errors") {
  CHECK(psnr_from_mse(0.01) == doctest::Approx(20.0));
  CHECK(psnr_from_mse(1.0) == doctest::Approx(0.0));
  CHECK(std::isinf(psnr_from_mse(0.0)));
}

TEST_CASE("batch PSNR matches a direct evaluation") {
  std::mt19937_64 gen(61);
  const Matrix V = testing::uniform_matrix(6, 5, gen);
  const Matrix W = testing::uniform_matrix(6, 2, gen);
  const Matrix H = testing::uniform_matrix(2, 5, gen);
  double sq = 0.0;
  for (Index j = 0; j < 5; ++j) {
    for (Index i = 0; i < 6; ++i) {
      double wh = 0.0;
      for (Index k = 0; k < 2; ++k) wh += W(i, k) * H(k, j);
      sq += (V(i, j) - wh) * (V(i, j) - wh);
    }
  }
  CHECK(psnr_batch(V, W, H) == doctest::Approx(-10.0 * std::log10(sq / 30.0)));
  CHECK(std::isinf(psnr_batch(W * H, W, H)));
  CHECK_THROWS_AS(psnr_batch(V, W, Matrix::Zero(3, 5)), DimensionError);
}

TEST_CASE("online PSNR") {
  const Matrix W = Matrix::Identity(2, 2);
  const Matrix H = Eigen::Vector2d(0.3, 0.4);
  CHECK(std::isinf(psnr_online(H, W, H)));
  // F N = 2, squared error 0.2 gives an MSE of 0.1.
  const Matrix clean = Eigen::Vector2d(0.3 + std::sqrt(0.2), 0.4);
  CHECK(psnr_online(clean, W, H) == doctest::Approx(10.0));
}

TEST_CASE("online PSNR agrees with the regret loss") {
  std::mt19937_64 gen(62);
  HyperParams p;
  p.K = 2;
  OnlineState st = init_state(5, p, HistoryMode::kCodes);
  const Matrix V = testing::uniform_matrix(5, 10, gen);
  for (Index j = 0; j < 10; ++j) step(st, V.col(j), StepOptions{});
  const double regret = regret_loss(st, V);
  const double from_regret = -10.0 * std::log10(2.0 * regret / 5.0);
  CHECK(std::abs(psnr_online(V, st.dict.W, coefficient_history(st)) - from_regret) <= 1e-9);
}

TEST_CASE("PSNR falls as perturbations grow") {
  std::mt19937_64 gen(63);
  std::normal_distribution<double> normal(0.0, 1.0);
  const Matrix W = testing::uniform_matrix(10, 3, gen);
  const Matrix H = testing::uniform_matrix(3, 20, gen);
  Matrix E(10, 20);
  for (Index j = 0; j < 20; ++j) {
    for (Index i = 0; i < 10; ++i) E(i, j) = normal(gen);
  }
  const Matrix V = W * H;
  const double p1 = psnr_batch(V + 0.01 * E, W, H);
  const double p2 = psnr_batch(V + 0.1 * E, W, H);
  const double p3 = psnr_batch(V + 1.0 * E, W, H);
  CHECK(p1 > p2);
  CHECK(p2 > p3);
}

TEST_CASE("reconstruction and residual") {
  std::mt19937_64 gen(64);
  const Matrix W = testing::uniform_matrix(4, 3, gen);
  CHECK(reconstruct(W, Matrix::Identity(3, 3)) == W);
  const Matrix H = testing::uniform_matrix(3, 5, gen);
  CHECK(residual_outliers(W * H, W, H).isZero());
  const Matrix V = testing::uniform_matrix(4, 5, gen);
  CHECK((residual_outliers(V, W, H) - (V - W * H)).norm() <= 1e-14);
  CHECK_THROWS_AS(reconstruct(W, Matrix::Zero(2, 2)), DimensionError);
}

}  // TEST_SUITE

TEST_SUITE("io") {

TEST_CASE("matrix files round trip exactly") {
  std::mt19937_64 gen(65);
  const fs::path dir = scratch_dir("matrix");
  const Matrix M = testing::uniform_matrix(3, 4, gen, -1, 1);
  write_matrix(dir / "m.mat", M, 42);
  const MatrixFile back = read_matrix(dir / "m.mat");
  CHECK(back.data == M);
  CHECK(back.seed == 42);
  CHECK(slurp(dir / "m.mat").rfind("RONMF-MAT v1 3 4 42\n", 0) == 0);
}

TEST_CASE("malformed matrix files are reported") {
  const fs::path dir = scratch_dir("badmatrix");
  {
    std::ofstream out(dir / "bad.mat");
    out << "RONMF-MAT v1 2 2 0\n1 2\n3\n";
  }
  CHECK_THROWS_AS(read_matrix(dir / "bad.mat"), IoError);
  CHECK_THROWS_AS(read_matrix(dir / "missing.mat"), IoError);
}

TEST_CASE("trace and results CSV formats") {
  const fs::path dir = scratch_dir("csv");
  {
    TraceCsvWriter w(dir / "trace.csv");
    TraceRecord rec;
    rec.t = 3;
    rec.wall_clock_s = 0.5;
    rec.surrogate_loss = 1.25;
    rec.dict_drift = 0.0;
    w.write(rec);
  }
  const std::string trace = slurp(dir / "trace.csv");
  CHECK(trace.rfind(std::string(kTraceHeader) + "\n", 0) == 0);
  CHECK(trace.find("3,0.5,1.25,,0") != std::string::npos);

  write_results(dir / "results.csv",
                {{"opgd", "s1", INFINITY, 1.5, 7}, {"bpgd", "s1", 20.0, 2.0, 7}});
  const std::string results = slurp(dir / "results.csv");
  CHECK(results.rfind(std::string(kResultsHeader) + "\n", 0) == 0);
  CHECK(results.find("opgd,s1,inf,1.5,7") != std::string::npos);
  CHECK(results.find("bpgd,s1,20,2,7") != std::string::npos);
}

}  // TEST_SUITE
