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

#ifndef RONMF_ONLINE_HPP_
#define RONMF_ONLINE_HPP_

// Streaming robust NMF: encode each incoming sample against the current
// dictionary, fold it into the sufficient statistics, then refit the
// dictionary to the statistics.

#include <functional>
#include <optional>
#include <vector>

#include "ronmf/datagen.hpp"
#include "ronmf/dict_update.hpp"
#include "ronmf/encode.hpp"
#include "ronmf/types.hpp"

namespace ronmf {

/// What an engine keeps per processed sample. kCodes keeps (h, r) so runs
/// can export coefficients and outliers; kFull also keeps the sample.
enum class HistoryMode { kNone, kCodes, kFull };

/// Per-sample records, kept only when an engine runs in evaluation mode.
/// `v` stays empty under HistoryMode::kCodes.
struct SampleHistory {
  std::vector<Vector> v;
  std::vector<Vector> h;
  std::vector<Vector> r;
};

/// Statistics of the clean stream, used to track the regret loss
/// (1/t) sum 1/2 ||v_clean_i - W h_i||^2 with O(FK) memory.
struct CleanStats {
  Matrix B;
  double offset = 0.0;
};

struct OnlineState {
  Dictionary dict;
  SufficientStats stats;
  HyperParams params;
  Index t = 0;
  std::vector<TraceRecord> trace;
  double elapsed_s = 0.0;
  std::optional<SampleHistory> history;
  bool history_keeps_samples = false;
  std::optional<CleanStats> clean;
  /// Multiplier of the ADMM dictionary update, carried across steps.
  Matrix dict_dual;
};

/// Solver selection for a step; numeric parameters come from the state.
struct StepOptions {
  EncodeSolver encode_solver = EncodeSolver::kPgd;
  InitMode h_init = InitMode::kZeros;
  DictSolver dict_solver = DictSolver::kPgd;
  /// Intra-batch encode parallelism; results do not depend on it.
  unsigned threads = 1;
};

/// W0 has i.i.d. U[0,1] entries (seeded from params.seed), projected column
/// by column onto params.constraint; A = 0, B = 0, t = 0.
OnlineState init_state(Index F, const HyperParams& params,
                       HistoryMode history = HistoryMode::kNone);

/// One mini-batch: `batch` holds the samples as columns. When `clean_batch`
/// is given (same shape), the regret loss is tracked as well.
TraceRecord step(OnlineState& state, const Matrix& batch,
                 const StepOptions& opts, const Matrix* clean_batch = nullptr);

/// f~_t(W_t) = 1/2 tr(W^T W A) - tr(W^T B) + c_t. Throws if t = 0.
double surrogate_loss(const OnlineState& state);

/// Surrogate evaluated at an arbitrary dictionary.
double surrogate_loss(const OnlineState& state, const Matrix& W);

/// Regret from the running clean statistics; requires a clean stream.
double tracked_regret_loss(const OnlineState& state);

/// (1/t) sum 1/2 ||clean_i - W_t h_i||^2 using the retained coefficient
/// history; column i of `clean_history` aligns with the i-th sample.
double regret_loss(const OnlineState& state, const Matrix& clean_history);

/// Retained coefficients as a K x t matrix (evaluation mode only).
Matrix coefficient_history(const OnlineState& state);

/// Retained outlier estimates as an F x t matrix (evaluation mode only).
Matrix outlier_history(const OnlineState& state);

/// A finite sequence of F-vectors.
class SampleSource {
 public:
  virtual ~SampleSource() = default;
  virtual std::optional<Vector> next() = 0;
};

/// Columns of a matrix in order, or in the order of a prepared stream.
class MatrixSource : public SampleSource {
 public:
  explicit MatrixSource(const Matrix& data);
  MatrixSource(const Matrix& data, const PreparedStream& stream);

  std::optional<Vector> next() override;

 private:
  const Matrix& data_;
  const PreparedStream* stream_ = nullptr;
  Index pos_ = 0;
};

using TraceSink = std::function<void(const TraceRecord&)>;

/// Consumes `source` in mini-batches of params.tau (a final short batch is
/// processed as-is), emitting one trace record per batch. `clean`, when
/// given, must yield the clean counterpart of every sample.
Dictionary run_stream(OnlineState& state, SampleSource& source,
                      const StepOptions& opts, const TraceSink& sink = {},
                      SampleSource* clean = nullptr);

}  // namespace ronmf

#endif  // RONMF_ONLINE_HPP_
