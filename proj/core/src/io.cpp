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

#include "ronmf/io.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>
#include <vector>

#include "ronmf/metrics.hpp"

namespace ronmf {
namespace {

constexpr const char* kMagic = "RONMF-MAT";
constexpr const char* kVersion = "v1";

void append_real(std::string& out, double value) {
  char buf[32];
  const int n = std::snprintf(buf, sizeof buf, "%.17g", value);
  out.append(buf, static_cast<std::size_t>(n));
}

}  // namespace

std::string format_matrix(const Matrix& M, std::uint64_t seed) {
  std::string out;
  out.reserve(static_cast<std::size_t>(M.size()) * 24 + 64);
  out += kMagic;
  out += ' ';
  out += kVersion;
  out += ' ' + std::to_string(M.rows()) + ' ' + std::to_string(M.cols()) +
         ' ' + std::to_string(seed) + '\n';
  for (Index i = 0; i < M.rows(); ++i) {
    for (Index j = 0; j < M.cols(); ++j) {
      if (j > 0) out += ' ';
      append_real(out, M(i, j));
    }
    out += '\n';
  }
  return out;
}

void write_matrix(const std::filesystem::path& path, const Matrix& M,
                  std::uint64_t seed) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  const std::string text = format_matrix(M, seed);
  f.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!f) throw IoError("failed writing " + path.string());
}

MatrixFile read_matrix(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path.string());
  std::string header;
  if (!std::getline(f, header)) throw IoError(path.string() + ": empty file");

  std::istringstream hs(header);
  std::string magic, version;
  long long rows = -1, cols = -1;
  std::uint64_t seed = 0;
  hs >> magic >> version >> rows >> cols >> seed;
  if (!hs || magic != kMagic || version != kVersion || rows < 1 || cols < 1) {
    throw IoError(path.string() + ": bad header '" + header +
                  "', expected 'RONMF-MAT v1 F N seed'");
  }

  MatrixFile out;
  out.seed = seed;
  out.data.resize(rows, cols);
  std::string line;
  for (long long i = 0; i < rows; ++i) {
    if (!std::getline(f, line)) {
      throw IoError(path.string() + ": expected " + std::to_string(rows) +
                    " data rows, found " + std::to_string(i));
    }
    const char* p = line.data();
    const char* end = p + line.size();
    for (long long j = 0; j < cols; ++j) {
      while (p < end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
      double value = 0.0;
      const auto [next, ec] = std::from_chars(p, end, value);
      if (ec != std::errc()) {
        throw IoError(path.string() + ": row " + std::to_string(i + 1) +
                      ", column " + std::to_string(j + 1) + ": not a number");
      }
      out.data(i, j) = value;
      p = next;
    }
    while (p < end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
    if (p != end) {
      throw IoError(path.string() + ": row " + std::to_string(i + 1) +
                    " has more than " + std::to_string(cols) + " values");
    }
  }
  return out;
}

std::string format_trace_row(const TraceRecord& rec) {
  std::string out = std::to_string(rec.t);
  out += ',';
  out += format_real(rec.wall_clock_s);
  out += ',';
  out += format_real(rec.surrogate_loss);
  out += ',';
  if (rec.regret_loss) out += format_real(*rec.regret_loss);
  out += ',';
  out += format_real(rec.dict_drift);
  return out;
}

TraceCsvWriter::TraceCsvWriter(const std::filesystem::path& path,
                               bool zero_clock)
    : out_(path, std::ios::binary | std::ios::trunc), zero_clock_(zero_clock) {
  if (!out_) throw IoError("cannot open " + path.string() + " for writing");
  out_ << kTraceHeader << '\n';
}

void TraceCsvWriter::write(const TraceRecord& rec) {
  TraceRecord row = rec;
  if (zero_clock_) row.wall_clock_s = 0.0;
  out_ << format_trace_row(row) << '\n';
  out_.flush();
  if (!out_) throw IoError("failed writing trace row");
}

std::string format_result_row(const ResultRow& row) {
  return row.algorithm + ',' + row.setting + ',' + format_real(row.psnr_db) +
         ',' + format_real(row.runtime_s) + ',' + std::to_string(row.seed);
}

void write_results(const std::filesystem::path& path,
                   const std::vector<ResultRow>& rows) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  f << kResultsHeader << '\n';
  for (const ResultRow& row : rows) f << format_result_row(row) << '\n';
  if (!f) throw IoError("failed writing " + path.string());
}

}  // namespace ronmf
