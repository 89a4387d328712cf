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

#include "ptm/core.hpp"

#include <bit>

#include "ptm/errors.hpp"

namespace ptm {

char axis_char(PauliAxis a) noexcept {
  switch (a) {
    case PauliAxis::X: return 'X';
    case PauliAxis::Y: return 'Y';
    case PauliAxis::Z: return 'Z';
  }
  return '?';
}

PauliAxis axis_from_char(char c) {
  switch (c) {
    case 'X': return PauliAxis::X;
    case 'Y': return PauliAxis::Y;
    case 'Z': return PauliAxis::Z;
    default:
      throw InvalidArgument(std::string("not a Pauli axis: '") + c + "'");
  }
}

Matrix2c pauli_matrix(PauliAxis a) {
  const Complex i(0.0, 1.0);
  Matrix2c p;
  switch (a) {
    case PauliAxis::X: p << 0.0, 1.0, 1.0, 0.0; break;
    case PauliAxis::Y: p << 0.0, -i, i, 0.0; break;
    case PauliAxis::Z: p << 1.0, 0.0, 0.0, -1.0; break;
  }
  return p;
}

ShotRecord::ShotRecord(std::vector<PauliAxis> axes,
                       std::vector<std::uint8_t> bits)
    : axes_(std::move(axes)), bits_(std::move(bits)) {
  if (axes_.size() != bits_.size()) {
    throw DimensionMismatch("shot has " + std::to_string(axes_.size()) +
                            " axes but " + std::to_string(bits_.size()) +
                            " bits");
  }
  if (axes_.empty()) throw InvalidArgument("shot must cover at least one qubit");
  for (auto b : bits_) {
    if (b > 1) throw InvalidArgument("outcome bits must be 0 or 1");
  }
}

Bipartition::Bipartition(int n, std::uint64_t mask) : n_(n), mask_(mask) {
  if (n < 1 || n > 63) throw IndexOutOfRange("qubit count must be in [1, 63]");
  if ((mask >> n) != 0) {
    throw IndexOutOfRange("partition mask names a qubit above n=" +
                          std::to_string(n));
  }
}

Bipartition Bipartition::range(int n, int first, int last) {
  if (first < 1 || last > n || first > last) {
    throw IndexOutOfRange("qubit range " + std::to_string(first) + "-" +
                          std::to_string(last) + " outside 1.." +
                          std::to_string(n));
  }
  std::uint64_t mask = 0;
  for (int j = first; j <= last; ++j) mask |= std::uint64_t{1} << (j - 1);
  return {n, mask};
}

Bipartition Bipartition::upper_half(int n) { return range(n, n / 2 + 1, n); }

int Bipartition::size() const noexcept { return std::popcount(mask_); }

LocalFactor local_factor(PauliAxis axis, int bit, int chi) {
  const int xi = ((bit ^ chi) & 1) ? -1 : 1;
  LocalFactor f;
  f.axis = axis;
  f.xi = xi;
  f.matrix = 0.5 * Matrix2c::Identity() + (1.5 * xi) * pauli_matrix(axis);
  return f;
}

FactorizedSnapshot snapshot_from_shot(const ShotRecord& shot,
                                      const Bipartition& part) {
  const int n = shot.num_qubits();
  if (n != part.num_qubits()) {
    throw DimensionMismatch("shot has n=" + std::to_string(n) +
                            " but partition has n=" +
                            std::to_string(part.num_qubits()));
  }
  std::vector<LocalFactor> factors;
  factors.reserve(n);
  for (int j = 1; j <= n; ++j) {
    const PauliAxis a = shot.axis(j);
    factors.push_back(local_factor(a, shot.bit(j), chi_bit(a, part.contains(j))));
  }
  return FactorizedSnapshot(std::move(factors));
}

}  // namespace ptm
