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

// Per-shot timing of the estimators over an (n, m, algo) grid.
//
// Shots are generated once per n and are not timed. One timing sample runs
// whole passes of "ingest all N shots, then estimate p_m" on a freshly reset
// accumulator until at least `min_sample_seconds` of timed work has
// accumulated; only ingest and estimate sit inside the timer. The reported
// figure is the median over `reps` samples, after `warmup` discarded ones.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ptm/estimators.hpp"
#include "ptm/io.hpp"

namespace ptm {

struct BenchConfig {
  std::vector<int> qubits{8, 9, 10, 11};
  std::vector<int> orders{2};
  std::vector<EstimatorKind> algos{EstimatorKind::Baseline, EstimatorKind::Sweep,
                                   EstimatorKind::Pauli2};
  std::uint64_t shots = 10;
  int warmup = 1;
  int reps = 5;
  int threads = 1;
  std::uint64_t seed = 1;
  std::string state = "ghz";
  /// Partition mask per n; empty means B = {floor(n/2)+1, ..., n}.
  std::optional<std::uint64_t> partition;
  double min_sample_seconds = 0.02;
  int dense_limit = kDefaultDenseLimit;
};

struct BenchPoint {
  int n = 0;
  int m = 0;
  EstimatorKind algo = EstimatorKind::Sweep;
  std::uint64_t partition = 0;
  double seconds_per_shot = 0.0;  // median over timed samples
  std::vector<double> samples;    // seconds per shot, one per timed sample
  MomentEstimate estimate;
};

/// Throws InvalidArgument for an empty or inconsistent grid and
/// SizeLimitExceeded when a grid point exceeds the dense limit.
void validate(const BenchConfig& config);

using BenchProgress = std::function<void(const BenchPoint&)>;

/// Pauli2 runs only at m = 2; other (n, m, algo) combinations all run.
std::vector<BenchPoint> run_bench(const BenchConfig& config,
                                  const BenchProgress& progress = {});

/// Median seconds per shot of one estimator over a fixed shot list.
BenchPoint time_estimator(EstimatorKind algo, const Bipartition& part, int m,
                          std::span<const ShotRecord> shots, int warmup, int reps,
                          double min_sample_seconds, int threads = 1);

/// Least-squares slope of log2(seconds) against n.
double fit_log2_slope(std::span<const int> n, std::span<const double> seconds);

ResultRecord to_record(const BenchPoint& p, std::uint64_t shots,
                       std::uint64_t seed);

double median(std::vector<double> v);

}  // namespace ptm
