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

// Domain vocabulary: measurement shots, bipartitions and the factorized
// partially transposed snapshot built from one shot.
//
// Qubits are numbered 1..n in every public API. Bitmasks over qubits use
// bit (j - 1) for qubit j.

#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace ptm {

using Complex = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;

/// Single-qubit measurement axis. The underlying value is the base-4 digit
/// used in Pauli-string indices (identity is digit 0).
enum class PauliAxis : std::uint8_t { X = 1, Y = 2, Z = 3 };

constexpr int encode(PauliAxis a) noexcept { return static_cast<int>(a); }

char axis_char(PauliAxis a) noexcept;
/// Throws InvalidArgument for anything other than 'X', 'Y', 'Z'.
PauliAxis axis_from_char(char c);

/// The 2x2 Pauli matrix for `a`.
Matrix2c pauli_matrix(PauliAxis a);

/// One randomized Pauli measurement: the basis string and the outcome bits.
class ShotRecord {
 public:
  ShotRecord() = default;
  ShotRecord(std::vector<PauliAxis> axes, std::vector<std::uint8_t> bits);

  int num_qubits() const noexcept { return static_cast<int>(axes_.size()); }

  PauliAxis axis(int qubit) const { return axes_.at(qubit - 1); }
  int bit(int qubit) const { return bits_.at(qubit - 1); }

  std::span<const PauliAxis> axes() const noexcept { return axes_; }
  std::span<const std::uint8_t> bits() const noexcept { return bits_; }

  friend bool operator==(const ShotRecord&, const ShotRecord&) = default;

 private:
  std::vector<PauliAxis> axes_;
  std::vector<std::uint8_t> bits_;
};

/// Subsystem B of a bipartition A|B, stored as a bitmask (qubit j -> bit j-1).
class Bipartition {
 public:
  Bipartition() = default;
  /// Throws IndexOutOfRange if `mask` names a qubit above n.
  Bipartition(int n, std::uint64_t mask);

  static Bipartition empty(int n) { return {n, 0}; }
  /// Qubits first..last inclusive, 1-based.
  static Bipartition range(int n, int first, int last);
  /// B = {floor(n/2)+1, ..., n}.
  static Bipartition upper_half(int n);

  int num_qubits() const noexcept { return n_; }
  std::uint64_t mask() const noexcept { return mask_; }
  bool contains(int qubit) const noexcept {
    return qubit >= 1 && qubit <= n_ && ((mask_ >> (qubit - 1)) & 1u) != 0;
  }
  int size() const noexcept;

  friend bool operator==(const Bipartition&, const Bipartition&) = default;

 private:
  int n_ = 0;
  std::uint64_t mask_ = 0;
};

/// G = I/2 + (3/2) xi P for one qubit of a partially transposed snapshot.
struct LocalFactor {
  Matrix2c matrix;
  PauliAxis axis = PauliAxis::Z;
  int xi = 1;  // +1 or -1
};

/// S = G_1 (x) G_2 (x) ... (x) G_n with qubit 1 first.
class FactorizedSnapshot {
 public:
  FactorizedSnapshot() = default;
  explicit FactorizedSnapshot(std::vector<LocalFactor> factors)
      : factors_(std::move(factors)) {}

  int num_qubits() const noexcept { return static_cast<int>(factors_.size()); }
  const LocalFactor& factor(int qubit) const { return factors_.at(qubit - 1); }
  std::span<const LocalFactor> factors() const noexcept { return factors_; }

 private:
  std::vector<LocalFactor> factors_;
};

/// 1 iff the qubit lies in B and was measured along Y, else 0. Transposing
/// a Y-axis factor flips the sign of its Pauli part.
constexpr int chi_bit(PauliAxis axis, bool in_b) noexcept {
  return (in_b && axis == PauliAxis::Y) ? 1 : 0;
}

LocalFactor local_factor(PauliAxis axis, int bit, int chi);

/// Throws DimensionMismatch when the shot and partition sizes differ.
FactorizedSnapshot snapshot_from_shot(const ShotRecord& shot,
                                      const Bipartition& part);

}  // namespace ptm
