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

// Ground truth at desk scale: explicit partial transpose, exact PT moments
// of a known state, and the brute-force U-statistic over all tuples.

#pragma once

#include <cstdint>
#include <span>

#include <Eigen/Dense>

#include "ptm/core.hpp"
#include "ptm/linalg.hpp"

namespace ptm {

struct DensityTolerance {
  double hermitian = 1e-10;
  double min_eigenvalue = -1e-9;
  double trace = 1e-10;
};

/// A validated n-qubit state: Hermitian, PSD and unit trace within
/// DensityTolerance.
class DensityMatrix {
 public:
  /// Throws DimensionMismatch for a non-square or non-power-of-two matrix and
  /// InvalidArgument when validation fails.
  explicit DensityMatrix(DenseMatrix rho, DensityTolerance tol = {});

  int num_qubits() const noexcept { return n_; }
  Index dim() const noexcept { return rho_.rows(); }
  const DenseMatrix& matrix() const noexcept { return rho_; }

 private:
  DenseMatrix rho_;
  int n_;
};

/// Mask over dense label bits for the qubits of B (qubit j -> bit n - j).
std::uint64_t label_mask(const Bipartition& part) noexcept;

/// out[(xA, xB), (yA, yB)] = in[(xA, yB), (yA, xB)].
DenseMatrix partial_transpose(const DenseMatrix& m, const Bipartition& part);
inline DenseMatrix partial_transpose(const DensityMatrix& rho,
                                     const Bipartition& part) {
  return partial_transpose(rho.matrix(), part);
}

/// tr[(rho^Gamma_B)^m] by repeated multiplication. Throws NumericalError if
/// the imaginary residue exceeds 1e-10.
double pt_moment_exact(const DensityMatrix& rho, const Bipartition& part, int m);

/// Eigenvalues of rho^Gamma_B, ascending.
Eigen::VectorXd pt_spectrum(const DensityMatrix& rho, const Bipartition& part);

/// Dense matrix of the Pauli string with base-4 code `code`
/// (qubit j is digit j-1; 0 = I, 1 = X, 2 = Y, 3 = Z).
DenseMatrix pauli_string_matrix(int n, std::uint64_t code);

/// C(N, m)^{-1} sum over s_1 < ... < s_m of tr(S_{s_1} ... S_{s_m}), each
/// tuple multiplied densely in increasing shot order.
Complex ustat_bruteforce(std::span<const ShotRecord> shots,
                         const Bipartition& part, int m,
                         int dense_limit = kDefaultDenseLimit);

}  // namespace ptm
