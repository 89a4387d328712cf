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

#include "ptm/oracle.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include "ptm/estimators.hpp"

namespace ptm {

DensityMatrix::DensityMatrix(DenseMatrix rho, DensityTolerance tol)
    : rho_(std::move(rho)) {
  check_square(rho_);
  n_ = qubits_for_dim(rho_.rows());
  if (!rho_.allFinite()) throw InvalidArgument("density matrix has non-finite entries");

  const double herm = (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol.hermitian) {
    std::ostringstream os;
    os << "density matrix is not Hermitian (max deviation " << herm << ")";
    throw InvalidArgument(os.str());
  }
  const double tr_err = std::abs(rho_.trace() - Complex(1.0, 0.0));
  if (tr_err > tol.trace) {
    std::ostringstream os;
    os << "density matrix trace differs from 1 by " << tr_err;
    throw InvalidArgument(os.str());
  }
  const DenseMatrix h = 0.5 * (rho_ + rho_.adjoint());
  Eigen::SelfAdjointEigenSolver<DenseMatrix> eig(h, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  if (lo < tol.min_eigenvalue) {
    std::ostringstream os;
    os << "density matrix is not positive semidefinite (min eigenvalue " << lo
       << ")";
    throw InvalidArgument(os.str());
  }
}

std::uint64_t label_mask(const Bipartition& part) noexcept {
  const int n = part.num_qubits();
  std::uint64_t mask = 0;
  for (int j = 1; j <= n; ++j) {
    if (part.contains(j)) mask |= std::uint64_t{1} << (n - j);
  }
  return mask;
}

DenseMatrix partial_transpose(const DenseMatrix& m, const Bipartition& part) {
  check_square(m);
  const int n = qubits_for_dim(m.rows());
  if (n != part.num_qubits()) {
    throw DimensionMismatch("matrix has n=" + std::to_string(n) +
                            " but partition has n=" +
                            std::to_string(part.num_qubits()));
  }
  const std::uint64_t b = label_mask(part);
  const Index d = m.rows();
  DenseMatrix out(d, d);
  for (Index x = 0; x < d; ++x) {
    for (Index y = 0; y < d; ++y) {
      const auto ux = static_cast<std::uint64_t>(x);
      const auto uy = static_cast<std::uint64_t>(y);
      const auto sx = static_cast<Index>((ux & ~b) | (uy & b));
      const auto sy = static_cast<Index>((uy & ~b) | (ux & b));
      out(x, y) = m(sx, sy);
    }
  }
  return out;
}

double pt_moment_exact(const DensityMatrix& rho, const Bipartition& part, int m) {
  if (m < 1) throw InvalidArgument("moment order must be >= 1");
  const DenseMatrix pt = partial_transpose(rho, part);
  DenseMatrix power = pt;
  for (int k = 2; k <= m; ++k) power = matmul(power, pt);
  const Complex t = power.trace();
  if (std::abs(t.imag()) > 1e-10) {
    std::ostringstream os;
    os << "PT moment has imaginary residue " << t.imag();
    throw NumericalError(os.str());
  }
  return t.real();
}

Eigen::VectorXd pt_spectrum(const DensityMatrix& rho, const Bipartition& part) {
  const DenseMatrix pt = partial_transpose(rho, part);
  const DenseMatrix h = 0.5 * (pt + pt.adjoint());
  Eigen::SelfAdjointEigenSolver<DenseMatrix> eig(h, Eigen::EigenvaluesOnly);
  return eig.eigenvalues();
}

DenseMatrix pauli_string_matrix(int n, std::uint64_t code) {
  if (n < 1 || (n < 32 && code >= pow4(n))) {
    throw IndexOutOfRange("Pauli code out of range for n=" + std::to_string(n));
  }
  DenseMatrix out = DenseMatrix::Identity(1, 1);
  for (int j = 1; j <= n; ++j) {
    const int digit = static_cast<int>((code >> (2 * (j - 1))) & 3u);
    const Matrix2c p = digit == 0 ? Matrix2c::Identity()
                                  : pauli_matrix(static_cast<PauliAxis>(digit));
    DenseMatrix next(out.rows() * 2, out.cols() * 2);
    for (Index r = 0; r < out.rows(); ++r) {
      for (Index c = 0; c < out.cols(); ++c) {
        next.block<2, 2>(2 * r, 2 * c) = out(r, c) * p;
      }
    }
    out = std::move(next);
  }
  return out;
}

Complex ustat_bruteforce(std::span<const ShotRecord> shots,
                         const Bipartition& part, int m, int dense_limit) {
  if (m < 1) throw InvalidArgument("moment order must be >= 1");
  const std::size_t total = shots.size();
  if (total < static_cast<std::size_t>(m)) {
    throw InsufficientShots("brute force of order " + std::to_string(m) +
                            " needs at least " + std::to_string(m) +
                            " shots, have " + std::to_string(total));
  }
  check_dense_limit(part.num_qubits(), dense_limit);

  std::vector<DenseMatrix> dense;
  dense.reserve(total);
  for (const ShotRecord& s : shots) {
    dense.push_back(kron_expand(snapshot_from_shot(s, part), dense_limit));
  }

  // Lexicographic walk over increasing index tuples.
  std::vector<std::size_t> idx(static_cast<std::size_t>(m));
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  Complex sum = 0.0;
  while (true) {
    DenseMatrix prod = dense[idx[0]];
    for (int k = 1; k < m; ++k) prod = matmul(prod, dense[idx[k]]);
    sum += prod.trace();

    int k = m - 1;
    while (k >= 0 && idx[k] == total - static_cast<std::size_t>(m - k)) --k;
    if (k < 0) break;
    ++idx[k];
    for (int i = k + 1; i < m; ++i) idx[i] = idx[i - 1] + 1;
  }
  return sum / binomial(total, m);
}

}  // namespace ptm
