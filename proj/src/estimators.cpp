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

#include "ptm/estimators.hpp"

#include <algorithm>
#include <cmath>

namespace ptm {

namespace {

void check_snapshot(const MomentAccumulator& acc, const FactorizedSnapshot& s) {
  if (s.num_qubits() != acc.num_qubits()) {
    throw DimensionMismatch("snapshot has n=" + std::to_string(s.num_qubits()) +
                            " but accumulator has n=" +
                            std::to_string(acc.num_qubits()));
  }
}

int active_orders(std::uint64_t shots, int max_order) {
  return static_cast<int>(std::min<std::uint64_t>(shots, max_order));
}

}  // namespace

double binomial(std::uint64_t n, int r) noexcept {
  if (r < 0 || static_cast<std::uint64_t>(r) > n) return 0.0;
  double c = 1.0;
  for (int i = 1; i <= r; ++i) {
    c *= static_cast<double>(n - static_cast<std::uint64_t>(r) + i);
    c /= i;
  }
  return c;
}

double pow5(int n) noexcept {
  double p = 1.0;
  for (int i = 0; i < n; ++i) p *= 5.0;
  return p;
}

MomentAccumulator::MomentAccumulator(int n, int max_order, int dense_limit)
    : n_(n) {
  if (n < 1) throw InvalidArgument("qubit count must be positive");
  if (max_order < 1) throw InvalidArgument("moment order must be >= 1");
  check_dense_limit(n, dense_limit);
  const Index d = dim_for_qubits(n);
  terms_.reserve(max_order + 1);
  terms_.push_back(DenseMatrix::Identity(d, d));
  for (int r = 1; r <= max_order; ++r) terms_.push_back(DenseMatrix::Zero(d, d));
}

void MomentAccumulator::reset() {
  shots_ = 0;
  for (std::size_t r = 1; r < terms_.size(); ++r) terms_[r].setZero();
}

void ingest_baseline(MomentAccumulator& acc, const FactorizedSnapshot& s) {
  check_snapshot(acc, s);
  const DenseMatrix dense = kron_expand(s, acc.n_);
  ++acc.shots_;
  for (int r = active_orders(acc.shots_, acc.max_order()); r >= 1; --r) {
    acc.terms_[r].noalias() += acc.terms_[r - 1] * dense;
  }
}

void ingest_sweep(MomentAccumulator& acc, const FactorizedSnapshot& s,
                  int threads) {
  check_snapshot(acc, s);
  ++acc.shots_;
  const Index d = acc.dim();
  for (int r = active_orders(acc.shots_, acc.max_order()); r >= 1; --r) {
    const DenseMatrix& prev = acc.terms_[r - 1];
    DenseMatrix& cur = acc.terms_[r];
    // T <- A_{r-1}; T <- T * S; A_r += T, one row of T at a time.
    kernel::for_row_blocks(d, threads, [&](Index first, Index last) {
      std::vector<Complex> row(static_cast<std::size_t>(d));
      for (Index i = first; i < last; ++i) {
        std::copy_n(prev.row(i).data(), d, row.data());
        kernel::apply_snapshot_to_row(row.data(), s);
        Complex* out = cur.row(i).data();
        for (Index k = 0; k < d; ++k) out[k] += row[k];
      }
    });
  }
}

MomentEstimate estimate(const MomentAccumulator& acc, int r) {
  if (r < 1 || r > acc.max_order()) {
    throw IndexOutOfRange("moment order " + std::to_string(r) +
                          " outside 1.." + std::to_string(acc.max_order()));
  }
  if (acc.shots() < static_cast<std::uint64_t>(r)) {
    throw InsufficientShots("order " + std::to_string(r) + " needs at least " +
                            std::to_string(r) + " shots, have " +
                            std::to_string(acc.shots()));
  }
  const Complex t = acc.term(r).trace();
  const double c = binomial(acc.shots(), r);
  return {t.real() / c, std::abs(t.imag()) / c};
}

namespace testing {

void ingest_baseline_ascending(MomentAccumulator& acc,
                               const FactorizedSnapshot& s) {
  check_snapshot(acc, s);
  const DenseMatrix dense = kron_expand(s, acc.n_);
  ++acc.shots_;
  const int top = active_orders(acc.shots_, acc.max_order());
  for (int r = 1; r <= top; ++r) {
    acc.terms_[r].noalias() += acc.terms_[r - 1] * dense;
  }
}

}  // namespace testing

std::vector<PauliTerm> support_stream(const ShotRecord& shot,
                                      const Bipartition& part) {
  std::vector<PauliTerm> out;
  out.reserve(std::size_t{1} << shot.num_qubits());
  for_each_support_term(shot, part, [&](std::uint64_t q, double v) {
    out.push_back({q, v});
  });
  return out;
}

PauliAccumulator::PauliAccumulator(int n, int dense_limit) : n_(n) {
  if (n < 1) throw InvalidArgument("qubit count must be positive");
  check_dense_limit(n, dense_limit);
  u_.assign(static_cast<std::size_t>(pow4(n)), 0.0);
}

void PauliAccumulator::reset() {
  shots_ = 0;
  nu_ = 0.0;
  std::fill(u_.begin(), u_.end(), 0.0);
}

void ingest_pauli2(PauliAccumulator& acc, const ShotRecord& shot,
                   const Bipartition& part) {
  if (shot.num_qubits() != acc.n_) {
    throw DimensionMismatch("shot has n=" + std::to_string(shot.num_qubits()) +
                            " but accumulator has n=" +
                            std::to_string(acc.n_));
  }
  double delta = 0.0;
  double* u = acc.u_.data();
  for_each_support_term(shot, part, [&](std::uint64_t q, double v) {
    delta += u[q] * v;
    u[q] += v;
  });
  const double d = static_cast<double>(dim_for_qubits(acc.n_));
  acc.nu_ += 2.0 * delta + pow5(acc.n_) / d;
  ++acc.shots_;
}

double estimate_p2(const PauliAccumulator& acc) {
  const std::uint64_t shots = acc.shots();
  if (shots < 2) {
    throw InsufficientShots("order 2 needs at least 2 shots, have " +
                            std::to_string(shots));
  }
  const double d = static_cast<double>(dim_for_qubits(acc.num_qubits()));
  const double n = static_cast<double>(shots);
  return (d * acc.nu() - n * pow5(acc.num_qubits())) / (n * (n - 1.0));
}

std::string_view to_string(EstimatorKind k) noexcept {
  switch (k) {
    case EstimatorKind::Baseline: return "baseline";
    case EstimatorKind::Sweep: return "sweep";
    case EstimatorKind::Pauli2: return "pauli2";
  }
  return "?";
}

EstimatorKind estimator_kind_from_string(std::string_view s) {
  if (s == "baseline") return EstimatorKind::Baseline;
  if (s == "sweep") return EstimatorKind::Sweep;
  if (s == "pauli2") return EstimatorKind::Pauli2;
  throw InvalidArgument("unknown estimator '" + std::string(s) +
                        "' (expected baseline, sweep or pauli2)");
}

namespace {

std::variant<MomentAccumulator, PauliAccumulator> make_state(
    EstimatorKind kind, int n, int max_order, int dense_limit) {
  if (kind == EstimatorKind::Pauli2) {
    if (max_order != 2) {
      throw InvalidArgument("pauli2 supports moment order 2 only, got " +
                            std::to_string(max_order));
    }
    return PauliAccumulator(n, dense_limit);
  }
  return MomentAccumulator(n, max_order, dense_limit);
}

}  // namespace

OnlineEstimator::OnlineEstimator(EstimatorKind kind, const Bipartition& part,
                                 int max_order, int threads, int dense_limit)
    : kind_(kind),
      part_(part),
      max_order_(max_order),
      threads_(threads),
      state_(make_state(kind, part.num_qubits(), max_order, dense_limit)) {}

std::uint64_t OnlineEstimator::shots() const noexcept {
  return std::visit([](const auto& s) { return s.shots(); }, state_);
}

void OnlineEstimator::ingest(const ShotRecord& shot) {
  switch (kind_) {
    case EstimatorKind::Baseline:
      ingest_baseline(std::get<MomentAccumulator>(state_),
                      snapshot_from_shot(shot, part_));
      break;
    case EstimatorKind::Sweep:
      ingest_sweep(std::get<MomentAccumulator>(state_),
                   snapshot_from_shot(shot, part_), threads_);
      break;
    case EstimatorKind::Pauli2:
      ingest_pauli2(std::get<PauliAccumulator>(state_), shot, part_);
      break;
  }
}

MomentEstimate OnlineEstimator::estimate(int r) const {
  if (const auto* m = moments()) return ptm::estimate(*m, r);
  const PauliAccumulator& p = std::get<PauliAccumulator>(state_);
  if (r == 2) return {estimate_p2(p), 0.0};
  if (r == 1) {
    if (p.shots() < 1) throw InsufficientShots("order 1 needs at least 1 shot");
    const double d = static_cast<double>(dim_for_qubits(p.num_qubits()));
    return {d * p.coefficients()[0] / static_cast<double>(p.shots()), 0.0};
  }
  throw IndexOutOfRange("pauli2 estimates orders 1 and 2 only");
}

void OnlineEstimator::reset() {
  std::visit([](auto& s) { s.reset(); }, state_);
}

}  // namespace ptm
