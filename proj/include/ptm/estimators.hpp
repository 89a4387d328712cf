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

// Online unbiased estimators of partial-transpose moments
//
//     p_r = tr[(rho^Gamma)^r],   estimate = tr(A_r) / C(N, r),
//
// where A_r is the sum over all increasing r-tuples of ingested snapshots
// of the ordered product S_{s_1} ... S_{s_r}. Three update rules share that
// contract:
//
//   * Baseline: A_r += A_{r-1} * S with S expanded to a dense matrix.
//   * Sweep:    the same recurrence, with A_{r-1} * S evaluated as n exact
//               column-pair sweeps, one per local factor of S.
//   * Pauli2:   m = 2 only. Tracks the Pauli coefficients u of A_1 and
//               nu = sum u_Q^2, so tr(A_1^2) = d * nu.
//
// Shots are never retained; memory is fixed by (n, m).

#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ptm/core.hpp"
#include "ptm/linalg.hpp"

namespace ptm {

/// C(n, r) as a double, by a running product (no integer overflow).
double binomial(std::uint64_t n, int r) noexcept;

struct MomentEstimate {
  double value = 0.0;
  /// |Im tr(A_r)| / C(N, r). Zero up to rounding for r <= 2.
  double imag_diagnostic = 0.0;
};

class MomentAccumulator;

namespace testing {
/// The moment recurrence run in ASCENDING r, which reads the already
/// updated A_{r-1}. Wrong on purpose; used as a negative control only.
void ingest_baseline_ascending(MomentAccumulator& acc,
                               const FactorizedSnapshot& s);
}  // namespace testing

/// N together with dense A_0 = I, A_1, ..., A_m.
class MomentAccumulator {
 public:
  MomentAccumulator(int n, int max_order, int dense_limit = kDefaultDenseLimit);

  int num_qubits() const noexcept { return n_; }
  int max_order() const noexcept { return static_cast<int>(terms_.size()) - 1; }
  std::uint64_t shots() const noexcept { return shots_; }
  Index dim() const noexcept { return dim_for_qubits(n_); }

  /// A_r for 0 <= r <= max_order().
  const DenseMatrix& term(int r) const { return terms_.at(r); }

  /// Back to the zero-shot state without reallocating.
  void reset();

 private:
  friend void ingest_baseline(MomentAccumulator&, const FactorizedSnapshot&);
  friend void ingest_sweep(MomentAccumulator&, const FactorizedSnapshot&, int);
  friend void testing::ingest_baseline_ascending(MomentAccumulator&,
                                                 const FactorizedSnapshot&);

  int n_;
  std::uint64_t shots_ = 0;
  std::vector<DenseMatrix> terms_;
};

/// A_r += A_{r-1} * S for r = min(N, m) down to 1, via one dense expansion
/// of S and schoolbook products. O(m d^3) per shot.
void ingest_baseline(MomentAccumulator& acc, const FactorizedSnapshot& s);

/// Same update evaluated with column-pair sweeps. O(m n d^2) per shot.
/// `threads` > 1 splits rows across threads; results are identical.
void ingest_sweep(MomentAccumulator& acc, const FactorizedSnapshot& s,
                  int threads = 1);

/// Re tr(A_r) / C(N, r). Throws InsufficientShots when N < r and
/// IndexOutOfRange unless 1 <= r <= max_order().
MomentEstimate estimate(const MomentAccumulator& acc, int r);

/// One nonzero Pauli coefficient of a snapshot. `index` is the base-4 code
/// of the Pauli string, qubit j contributing enc(P_j) * 4^(j-1).
struct PauliTerm {
  std::uint64_t index = 0;
  double coeff = 0.0;

  friend bool operator==(const PauliTerm&, const PauliTerm&) = default;
};

constexpr std::uint64_t pow4(int j) noexcept { return std::uint64_t{1} << (2 * j); }

/// Visits the 2^n nonzero Pauli coefficients of the partially transposed
/// snapshot of `shot` in Gray-code order over subsets U of the qubits,
/// starting from U = {} with coefficient 2^-n. Moving qubit j into U
/// multiplies the coefficient by 3 xi_j and adds enc(P_j) 4^(j-1) to the
/// index; moving it out multiplies by xi_j / 3 and subtracts the same.
template <typename F>
void for_each_support_term(const ShotRecord& shot, const Bipartition& part,
                           F&& visit) {
  const int n = shot.num_qubits();
  if (n != part.num_qubits()) {
    throw DimensionMismatch("shot has n=" + std::to_string(n) +
                            " but partition has n=" +
                            std::to_string(part.num_qubits()));
  }
  double xi[64];
  std::uint64_t step[64];
  for (int j = 1; j <= n; ++j) {
    const PauliAxis a = shot.axis(j);
    xi[j - 1] = ((shot.bit(j) ^ chi_bit(a, part.contains(j))) & 1) ? -1.0 : 1.0;
    step[j - 1] = static_cast<std::uint64_t>(encode(a)) * pow4(j - 1);
  }

  double coeff = 1.0;
  for (int j = 0; j < n; ++j) coeff *= 0.5;
  std::uint64_t index = 0;
  visit(index, coeff);

  const std::uint64_t count = std::uint64_t{1} << n;
  std::uint64_t gray = 0;
  for (std::uint64_t k = 1; k < count; ++k) {
    const int q = std::countr_zero(k);  // 0-based qubit whose membership flips
    gray ^= std::uint64_t{1} << q;
    if ((gray >> q) & 1u) {
      coeff *= 3.0 * xi[q];
      index += step[q];
    } else {
      coeff = coeff * xi[q] / 3.0;  // exact: coeff carries a factor of 3
      index -= step[q];
    }
    visit(index, coeff);
  }
}

std::vector<PauliTerm> support_stream(const ShotRecord& shot,
                                      const Bipartition& part);

/// Pauli coefficients u of A_1 (length 4^n) and nu = sum_Q u_Q^2.
class PauliAccumulator {
 public:
  explicit PauliAccumulator(int n, int dense_limit = kDefaultDenseLimit);

  int num_qubits() const noexcept { return n_; }
  std::uint64_t shots() const noexcept { return shots_; }
  double nu() const noexcept { return nu_; }
  const std::vector<double>& coefficients() const noexcept { return u_; }

  void reset();

 private:
  friend void ingest_pauli2(PauliAccumulator&, const ShotRecord&,
                            const Bipartition&);

  int n_;
  std::uint64_t shots_ = 0;
  std::vector<double> u_;
  double nu_ = 0.0;
};

/// One pass over the support of the new snapshot:
/// delta += u_Q v; u_Q += v; then nu += 2 delta + 5^n / d. Each Q occurs
/// once per shot, so delta is accumulated against pre-update values.
void ingest_pauli2(PauliAccumulator& acc, const ShotRecord& shot,
                   const Bipartition& part);

/// (d nu - N 5^n) / (N (N - 1)). Throws InsufficientShots when N < 2.
double estimate_p2(const PauliAccumulator& acc);

/// 5^n as a double (exact for n <= 22).
double pow5(int n) noexcept;

enum class EstimatorKind { Baseline, Sweep, Pauli2 };

std::string_view to_string(EstimatorKind k) noexcept;
/// Accepts "baseline", "sweep", "pauli2"; throws InvalidArgument otherwise.
EstimatorKind estimator_kind_from_string(std::string_view s);

/// Any of the three estimators behind one ingest/estimate surface, bound to
/// a fixed bipartition.
class OnlineEstimator {
 public:
  /// Pauli2 requires max_order == 2.
  OnlineEstimator(EstimatorKind kind, const Bipartition& part, int max_order,
                  int threads = 1, int dense_limit = kDefaultDenseLimit);

  EstimatorKind kind() const noexcept { return kind_; }
  int max_order() const noexcept { return max_order_; }
  std::uint64_t shots() const noexcept;
  const Bipartition& partition() const noexcept { return part_; }

  void ingest(const ShotRecord& shot);
  /// Pauli2 answers r = 1 from u_I and r = 2 from nu.
  MomentEstimate estimate(int r) const;

  void reset();

  /// Null for Pauli2.
  const MomentAccumulator* moments() const noexcept {
    return std::get_if<MomentAccumulator>(&state_);
  }
  const PauliAccumulator* pauli() const noexcept {
    return std::get_if<PauliAccumulator>(&state_);
  }

 private:
  EstimatorKind kind_;
  Bipartition part_;
  int max_order_;
  int threads_;
  std::variant<MomentAccumulator, PauliAccumulator> state_;
};

}  // namespace ptm
