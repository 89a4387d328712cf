// Copyright 2026 The ptmoments Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Text formats.
//
// Shot file:
//
//     shots v1 n=<n>
//     # any number of comment lines
//     <n chars from XYZ> <n chars from 01>      one shot per line
//
// Qubit 1 is the leftmost character of both fields.
//
// Density-matrix file:
//
//     density v1 n=<n>
//     # comments
//     <2d reals per row: re(0) im(0) re(1) im(1) ...>   d rows
//
// Result files are CSV (preceded by `#` comment lines) or a JSON document
// with a "records" array. Partitions are bitmasks with qubit 1 = bit 0.
// Reals are written with 17 significant digits.

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ptm/core.hpp"
#include "ptm/oracle.hpp"
#include "ptm/witness.hpp"

namespace ptm {

struct ShotFile {
  int n = 0;
  std::vector<std::string> comments;  // without the leading '#'
  std::vector<ShotRecord> shots;
};

/// Strict parse. Throws ParseError with line/column on a malformed header,
/// a bad character or a length mismatch.
ShotFile parse_shots(std::istream& in);
ShotFile read_shots(const std::filesystem::path& path);

void format_shots(std::ostream& out, int n, std::span<const ShotRecord> shots,
                  std::span<const std::string> comments = {});
void write_shots(const std::filesystem::path& path, int n,
                 std::span<const ShotRecord> shots,
                 std::span<const std::string> comments = {});

DensityMatrix parse_density_matrix(std::istream& in);
DensityMatrix read_density_matrix(const std::filesystem::path& path);
void format_density_matrix(std::ostream& out, const DensityMatrix& rho);
void write_density_matrix(const std::filesystem::path& path,
                          const DensityMatrix& rho);

struct ResultRecord {
  int n = 0;
  int m = 0;
  std::string algo;  // baseline | sweep | pauli2
  std::uint64_t shots = 0;
  std::uint64_t partition = 0;  // qubit 1 = bit 0
  double p_hat = 0.0;
  double im_diagnostic = 0.0;
  std::vector<double> moments;   // p_1..p_m when computed
  std::vector<double> e_values;  // e_1..e_m when computed
  Verdict verdict;
  std::uint64_t seed = 0;
  double seconds_per_shot = 0.0;

  friend bool operator==(const ResultRecord&, const ResultRecord&) = default;
};

enum class ResultFormat { Csv, Structured };

/// "csv", or "json" / "structured".
ResultFormat result_format_from_string(std::string_view s);

/// CSV column order.
std::span<const std::string_view> result_columns();

void format_results(std::ostream& out, std::span<const ResultRecord> records,
                    ResultFormat format);
void write_results(std::span<const ResultRecord> records,
                   const std::filesystem::path& path, ResultFormat format);

std::vector<ResultRecord> parse_results(std::istream& in, ResultFormat format);
std::vector<ResultRecord> read_results(const std::filesystem::path& path,
                                       ResultFormat format);

/// 17 significant digits.
std::string format_real(double v);

}  // namespace ptm
