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

#include "ptm/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "ptm/simulator.hpp"

namespace ptm {

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t k = v.size() / 2;
  return v.size() % 2 ? v[k] : 0.5 * (v[k - 1] + v[k]);
}

void validate(const BenchConfig& c) {
  if (c.qubits.empty() || c.orders.empty() || c.algos.empty()) {
    throw InvalidArgument("bench grid must name at least one n, m and algo");
  }
  for (int n : c.qubits) {
    if (n < 1) throw InvalidArgument("bench qubit counts must be positive");
    check_dense_limit(n, c.dense_limit);
  }
  for (int m : c.orders) {
    if (m < 1) throw InvalidArgument("bench moment orders must be >= 1");
    if (static_cast<std::uint64_t>(m) > c.shots) {
      throw InvalidArgument("bench needs N >= m (N=" + std::to_string(c.shots) +
                            ", m=" + std::to_string(m) + ")");
    }
  }
  if (c.reps < 1) throw InvalidArgument("bench needs at least one timed rep");
  if (c.warmup < 0) throw InvalidArgument("warmup reps must be >= 0");
  if (c.threads < 1) throw InvalidArgument("thread count must be >= 1");
}

BenchPoint time_estimator(EstimatorKind algo, const Bipartition& part, int m,
                          std::span<const ShotRecord> shots, int warmup, int reps,
                          double min_sample_seconds, int threads) {
  using Clock = std::chrono::steady_clock;
  OnlineEstimator est(algo, part, m, threads);
  BenchPoint point;
  point.n = part.num_qubits();
  point.m = m;
  point.algo = algo;
  point.partition = part.mask();

  for (int sample = 0; sample < warmup + reps; ++sample) {
    double elapsed = 0.0;
    std::uint64_t passes = 0;
    do {
      est.reset();
      const auto t0 = Clock::now();
      for (const ShotRecord& s : shots) est.ingest(s);
      point.estimate = est.estimate(m);
      const auto t1 = Clock::now();
      elapsed += std::chrono::duration<double>(t1 - t0).count();
      ++passes;
    } while (elapsed < min_sample_seconds);
    if (sample >= warmup) {
      point.samples.push_back(elapsed / static_cast<double>(passes * shots.size()));
    }
  }
  point.seconds_per_shot = median(point.samples);
  return point;
}

std::vector<BenchPoint> run_bench(const BenchConfig& config,
                                  const BenchProgress& progress) {
  validate(config);
  std::vector<BenchPoint> out;
  for (int n : config.qubits) {
    const Bipartition part = config.partition
                                 ? Bipartition(n, *config.partition)
                                 : Bipartition::upper_half(n);
    const DensityMatrix rho =
        build_state(StateSpec::parse(config.state, n), config.dense_limit);
    if (rho.num_qubits() != n) {
      throw InvalidArgument("bench state has n=" + std::to_string(rho.num_qubits()) +
                            ", grid asks for n=" + std::to_string(n));
    }
    ShotRng rng(config.seed, static_cast<std::uint64_t>(n));
    const std::vector<ShotRecord> shots = sample_shots(rho, config.shots, rng);

    for (int m : config.orders) {
      for (EstimatorKind algo : config.algos) {
        if (algo == EstimatorKind::Pauli2 && m != 2) continue;
        BenchPoint p = time_estimator(algo, part, m, shots, config.warmup,
                                      config.reps, config.min_sample_seconds,
                                      config.threads);
        if (progress) progress(p);
        out.push_back(std::move(p));
      }
    }
  }
  return out;
}

double fit_log2_slope(std::span<const int> n, std::span<const double> seconds) {
  if (n.size() != seconds.size() || n.size() < 2) {
    throw InvalidArgument("slope fit needs at least two matching points");
  }
  const double k = static_cast<double>(n.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n.size(); ++i) {
    const double x = n[i];
    const double y = std::log2(seconds[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = k * sxx - sx * sx;
  if (denom == 0.0) throw InvalidArgument("slope fit needs distinct qubit counts");
  return (k * sxy - sx * sy) / denom;
}

ResultRecord to_record(const BenchPoint& p, std::uint64_t shots,
                       std::uint64_t seed) {
  ResultRecord r;
  r.n = p.n;
  r.m = p.m;
  r.algo = std::string(to_string(p.algo));
  r.shots = shots;
  r.partition = p.partition;
  r.p_hat = p.estimate.value;
  r.im_diagnostic = p.estimate.imag_diagnostic;
  r.seed = seed;
  r.seconds_per_shot = p.seconds_per_shot;
  return r;
}

}  // namespace ptm
