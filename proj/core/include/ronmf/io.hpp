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

#ifndef RONMF_IO_HPP_
#define RONMF_IO_HPP_

// File formats.
//
// Matrix file (data matrices and dictionaries):
//   RONMF-MAT v1 <F> <N> <seed>
//   <F lines of N space-separated values, 17 significant digits>
//
// Trace CSV:   t,wall_clock_s,surrogate_loss,regret_loss,dict_drift
// Results CSV: algorithm,setting,psnr_db,runtime_s,seed

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "ronmf/types.hpp"

namespace ronmf {

class IoError : public Error {
 public:
  using Error::Error;
};

struct MatrixFile {
  Matrix data;
  std::uint64_t seed = 0;
};

void write_matrix(const std::filesystem::path& path, const Matrix& M,
                  std::uint64_t seed);
std::string format_matrix(const Matrix& M, std::uint64_t seed);
MatrixFile read_matrix(const std::filesystem::path& path);

inline constexpr const char* kTraceHeader =
    "t,wall_clock_s,surrogate_loss,regret_loss,dict_drift";
inline constexpr const char* kResultsHeader =
    "algorithm,setting,psnr_db,runtime_s,seed";

std::string format_trace_row(const TraceRecord& rec);

/// Streams trace rows to a CSV file. With `zero_clock` the wall-clock
/// column is written as 0 so that repeated runs are byte-identical.
class TraceCsvWriter {
 public:
  explicit TraceCsvWriter(const std::filesystem::path& path,
                          bool zero_clock = false);

  void write(const TraceRecord& rec);
  void operator()(const TraceRecord& rec) { write(rec); }

 private:
  std::ofstream out_;
  bool zero_clock_;
};

struct ResultRow {
  std::string algorithm;
  std::string setting;
  double psnr_db = 0.0;
  double runtime_s = 0.0;
  std::uint64_t seed = 0;
};

std::string format_result_row(const ResultRow& row);

/// Writes the header and rows, replacing any existing file.
void write_results(const std::filesystem::path& path,
                   const std::vector<ResultRow>& rows);

}  // namespace ronmf

#endif  // RONMF_IO_HPP_
