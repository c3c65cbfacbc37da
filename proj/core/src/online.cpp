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

#include "ronmf/online.hpp"

#include <algorithm>
#include <chrono>
#include <thread>

#include "ronmf/prox.hpp"
#include "ronmf/rng.hpp"

namespace ronmf {
namespace {

using Clock = std::chrono::steady_clock;

double quadratic_part(const Matrix& W, const Matrix& A, const Matrix& B) {
  return 0.5 * (W * A).cwiseProduct(W).sum() - W.cwiseProduct(B).sum();
}

void encode_range(const Encoder& enc, const Matrix& batch, Index first,
                  Index last, Index t0, std::vector<EncodeResult>& out) {
  for (Index j = first; j < last; ++j) {
    out[static_cast<std::size_t>(j)] =
        enc.encode(batch.col(j), static_cast<std::uint64_t>(t0 + j));
  }
}

}  // namespace

OnlineState init_state(Index F, const HyperParams& params,
                       HistoryMode history) {
  params.validate();
  if (F < 1) throw InvalidArgument("init_state: F must be >= 1");
  OnlineState state;
  state.params = params;
  state.dict.constraint = params.constraint;
  state.dict.W.resize(F, params.K);
  Rng gen = make_rng(params.seed, "online.W0");
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (Index j = 0; j < params.K; ++j) {
    for (Index i = 0; i < F; ++i) state.dict.W(i, j) = unif(gen);
  }
  project_columns(state.dict.W, params.constraint);
  state.stats = SufficientStats::zeros(F, params.K);
  if (history != HistoryMode::kNone) state.history.emplace();
  state.history_keeps_samples = history == HistoryMode::kFull;
  return state;
}

TraceRecord step(OnlineState& state, const Matrix& batch,
                 const StepOptions& opts, const Matrix* clean_batch) {
  const auto start = Clock::now();
  const Index F = state.dict.rows();
  const Index K = state.dict.cols();
  const Index n = batch.cols();
  if (batch.rows() != F) {
    throw DimensionError("step: batch has " + std::to_string(batch.rows()) +
                         " rows, dictionary has " + std::to_string(F));
  }
  if (n == 0) throw InvalidArgument("step: empty batch");
  if (clean_batch && (clean_batch->rows() != F || clean_batch->cols() != n)) {
    throw DimensionError("step: clean batch shape differs from batch");
  }
  if (clean_batch && state.t > 0 && !state.clean) {
    throw InvalidArgument("step: clean stream supplied after the first step");
  }

  EncodeConfig cfg{opts.encode_solver, state.params, opts.h_init};
  const Encoder encoder(state.dict.W, std::move(cfg));

  std::vector<EncodeResult> results(static_cast<std::size_t>(n));
  const unsigned threads =
      std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(n)));
  if (threads == 1) {
    encode_range(encoder, batch, 0, n, state.t, results);
  } else {
    std::vector<std::jthread> pool;
    const Index chunk = (n + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
      const Index first = w * chunk;
      const Index last = std::min(n, first + chunk);
      if (first >= last) break;
      pool.emplace_back([&, first, last] {
        encode_range(encoder, batch, first, last, state.t, results);
      });
    }
  }

  const HyperParams& p = state.params;
  const double lambda = p.lambda_for(F);
  Matrix H(K, n);
  Matrix VmR(F, n);
  Vector consts(n);
  for (Index j = 0; j < n; ++j) {
    const EncodeResult& res = results[static_cast<std::size_t>(j)];
    H.col(j) = res.h;
    VmR.col(j) = batch.col(j) - res.r;
    double c = 0.5 * VmR.col(j).squaredNorm() + lambda * res.r.lpNorm<1>();
    if (p.nu1 > 0.0) c += 0.5 * p.nu1 * res.h.squaredNorm();
    if (p.nu2 > 0.0) c += 0.5 * p.nu2 * res.r.squaredNorm();
    if (p.lambda_h_l1 > 0.0) c += p.lambda_h_l1 * res.h.lpNorm<1>();
    consts[j] = c;
  }

  if (clean_batch) {
    if (!state.clean) state.clean = CleanStats{Matrix::Zero(F, K), 0.0};
    const double t_old = static_cast<double>(state.t);
    const double t_new = t_old + static_cast<double>(n);
    state.clean->B = (t_old * state.clean->B + *clean_batch * H.transpose()) / t_new;
    state.clean->offset =
        (t_old * state.clean->offset +
         0.5 * clean_batch->colwise().squaredNorm().sum()) /
        t_new;
  } else if (state.clean) {
    throw InvalidArgument("step: clean stream ended before the data stream");
  }

  state.stats.fold(H, VmR, consts);
  state.t += n;
  if (state.history) {
    for (Index j = 0; j < n; ++j) {
      const EncodeResult& res = results[static_cast<std::size_t>(j)];
      if (state.history_keeps_samples) state.history->v.emplace_back(batch.col(j));
      state.history->h.push_back(res.h);
      state.history->r.push_back(res.r);
    }
  }

  DictUpdateResult upd =
      dict_update(opts.dict_solver, state.dict, state.stats, state.params,
                  &state.dict_dual);
  const double drift = (upd.dictionary.W - state.dict.W).norm();
  state.dict = std::move(upd.dictionary);

  TraceRecord rec;
  rec.t = state.t;
  rec.surrogate_loss = surrogate_loss(state);
  if (state.clean) rec.regret_loss = tracked_regret_loss(state);
  rec.dict_drift = drift;
  state.elapsed_s +=
      std::chrono::duration<double>(Clock::now() - start).count();
  rec.wall_clock_s = state.elapsed_s;
  state.trace.push_back(rec);
  return rec;
}

double surrogate_loss(const OnlineState& state, const Matrix& W) {
  if (state.t == 0) throw InvalidArgument("surrogate_loss: no samples seen");
  if (W.rows() != state.dict.rows() || W.cols() != state.dict.cols()) {
    throw DimensionError("surrogate_loss: dictionary shape mismatch");
  }
  const double value =
      quadratic_part(W, state.stats.A, state.stats.B) + state.stats.offset;
  // A sum of squares; clamp the cancellation error of the trace form.
  return std::max(value, 0.0);
}

double surrogate_loss(const OnlineState& state) {
  return surrogate_loss(state, state.dict.W);
}

double tracked_regret_loss(const OnlineState& state) {
  if (!state.clean || state.t == 0) {
    throw InvalidArgument("tracked_regret_loss: no clean stream tracked");
  }
  const double value = quadratic_part(state.dict.W, state.stats.A,
                                      state.clean->B) +
                       state.clean->offset;
  return std::max(value, 0.0);
}

double regret_loss(const OnlineState& state, const Matrix& clean_history) {
  if (!state.history) {
    throw InvalidArgument("regret_loss: coefficient history was not retained");
  }
  const auto& hs = state.history->h;
  if (state.t == 0 || hs.empty()) {
    throw InvalidArgument("regret_loss: no samples seen");
  }
  const Index t = static_cast<Index>(hs.size());
  if (clean_history.cols() != t || clean_history.rows() != state.dict.rows()) {
    throw DimensionError("regret_loss: clean history must be F x t");
  }
  double total = 0.0;
  for (Index i = 0; i < t; ++i) {
    total += 0.5 * (clean_history.col(i) -
                    state.dict.W * hs[static_cast<std::size_t>(i)])
                       .squaredNorm();
  }
  return total / static_cast<double>(t);
}

Matrix coefficient_history(const OnlineState& state) {
  if (!state.history) {
    throw InvalidArgument("coefficient_history: history was not retained");
  }
  const auto& hs = state.history->h;
  Matrix H(state.dict.cols(), static_cast<Index>(hs.size()));
  for (std::size_t i = 0; i < hs.size(); ++i) H.col(static_cast<Index>(i)) = hs[i];
  return H;
}

Matrix outlier_history(const OnlineState& state) {
  if (!state.history) {
    throw InvalidArgument("outlier_history: history was not retained");
  }
  const auto& rs = state.history->r;
  Matrix R(state.dict.rows(), static_cast<Index>(rs.size()));
  for (std::size_t i = 0; i < rs.size(); ++i) R.col(static_cast<Index>(i)) = rs[i];
  return R;
}

MatrixSource::MatrixSource(const Matrix& data) : data_(data) {}

MatrixSource::MatrixSource(const Matrix& data, const PreparedStream& stream)
    : data_(data), stream_(&stream) {}

std::optional<Vector> MatrixSource::next() {
  if (stream_) {
    if (pos_ >= stream_->size()) return std::nullopt;
    return stream_->sample(data_, pos_++);
  }
  if (pos_ >= data_.cols()) return std::nullopt;
  return Vector(data_.col(pos_++));
}

Dictionary run_stream(OnlineState& state, SampleSource& source,
                      const StepOptions& opts, const TraceSink& sink,
                      SampleSource* clean) {
  const Index F = state.dict.rows();
  const Index tau = state.params.tau;
  Matrix batch(F, tau);
  Matrix clean_batch(F, tau);
  Index sample_index = 0;
  bool done = false;
  while (!done) {
    Index filled = 0;
    while (filled < tau) {
      std::optional<Vector> v = source.next();
      if (!v) {
        done = true;
        break;
      }
      if (v->size() != F) {
        throw DimensionError("run_stream: sample " + std::to_string(sample_index) +
                             " has length " + std::to_string(v->size()) +
                             ", expected " + std::to_string(F));
      }
      batch.col(filled) = *v;
      if (clean) {
        std::optional<Vector> c = clean->next();
        if (!c || c->size() != F) {
          throw DimensionError("run_stream: clean sample " +
                               std::to_string(sample_index) +
                               " missing or of wrong length");
        }
        clean_batch.col(filled) = *c;
      }
      ++filled;
      ++sample_index;
    }
    if (filled == 0) break;
    const Matrix cb = clean_batch.leftCols(filled);
    const TraceRecord rec =
        step(state, batch.leftCols(filled), opts, clean ? &cb : nullptr);
    if (sink) sink(rec);
  }
  return state.dict;
}

}  // namespace ronmf
