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

// Dense complex kernels over 2^n x 2^n matrices.
//
// Row and column labels are n-bit strings x = (x_1, ..., x_n) in
// lexicographic order, qubit 1 being the most significant bit; the label
// stride of qubit j is therefore 2^(n-j). Matrices are stored row-major so
// that right multiplication by a Kronecker-factorized operator can run one
// contiguous row at a time.

#pragma once

#include <algorithm>
#include <bit>
#include <complex>
#include <cstdint>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Dense>

#include "ptm/core.hpp"
#include "ptm/errors.hpp"

namespace ptm {

template <typename Scalar>
using MatrixX = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic,
                              Eigen::Dynamic, Eigen::RowMajor>;
using DenseMatrix = MatrixX<double>;
using Index = Eigen::Index;

inline constexpr int kDefaultDenseLimit = 14;

constexpr Index dim_for_qubits(int n) noexcept { return Index{1} << n; }

/// n such that d = 2^n; throws DimensionMismatch if d is not a power of two.
inline int qubits_for_dim(Index d) {
  if (d < 2 || !std::has_single_bit(static_cast<std::uint64_t>(d))) {
    throw DimensionMismatch("matrix dimension " + std::to_string(d) +
                            " is not a power of two >= 2");
  }
  return std::countr_zero(static_cast<std::uint64_t>(d));
}

inline void check_dense_limit(int n, int dense_limit) {
  if (n > dense_limit) {
    throw SizeLimitExceeded("n=" + std::to_string(n) +
                            " exceeds the dense limit of " +
                            std::to_string(dense_limit) + " qubits");
  }
}

template <typename Derived>
void check_square(const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() != m.cols()) {
    throw DimensionMismatch("matrix is " + std::to_string(m.rows()) + "x" +
                            std::to_string(m.cols()) + ", expected square");
  }
}

/// Schoolbook product (Eigen's blocked GEMM; no sub-cubic algorithm).
template <typename DA, typename DB>
typename DA::PlainObject matmul(const Eigen::MatrixBase<DA>& a,
                                const Eigen::MatrixBase<DB>& b) {
  if (a.cols() != b.rows()) {
    throw DimensionMismatch("matmul: inner dimensions " +
                            std::to_string(a.cols()) + " and " +
                            std::to_string(b.rows()) + " differ");
  }
  typename DA::PlainObject out(a.rows(), b.cols());
  out.noalias() = a * b;
  return out;
}

template <typename Derived>
typename Derived::Scalar trace(const Eigen::MatrixBase<Derived>& m) {
  check_square(m);
  return m.trace();
}

/// Explicit 2^n x 2^n matrix of a factorized snapshot:
/// S(x, y) = prod_j G_j(x_j, y_j).
DenseMatrix kron_expand(const FactorizedSnapshot& s,
                        int dense_limit = kDefaultDenseLimit);

namespace kernel {

/// a * b. The complex overload skips the inf/NaN recovery of the standard
/// operator, which GCC emits as a library call per product.
template <typename A, typename B>
inline auto mul(const A& a, const B& b) {
  return a * b;
}
inline Complex mul(const Complex& a, const Complex& b) {
  return {a.real() * b.real() - a.imag() * b.imag(),
          a.real() * b.imag() + a.imag() * b.real()};
}

/// In-place row <- row * (I (x) G (x) I) for a factor with label stride
/// `stride`. Each pair (k, k + stride) is read into two temporaries before
/// either slot is written.
template <typename T, typename C>
inline void sweep_row(T* row, Index dim, Index stride, const C& alpha,
                      const C& beta, const C& gamma, const C& delta) {
  for (Index base = 0; base < dim; base += 2 * stride) {
    T* lo = row + base;
    T* hi = lo + stride;
    for (Index k = 0; k < stride; ++k) {
      const T x0 = lo[k];
      const T x1 = hi[k];
      lo[k] = mul(alpha, x0) + mul(gamma, x1);
      hi[k] = mul(beta, x0) + mul(delta, x1);
    }
  }
}

/// row <- row * S, applying the factors for qubits 1..n in order.
template <typename T>
inline void apply_snapshot_to_row(T* row, const FactorizedSnapshot& s) {
  const int n = s.num_qubits();
  const Index dim = dim_for_qubits(n);
  for (int j = 1; j <= n; ++j) {
    const Matrix2c& g = s.factor(j).matrix;
    sweep_row(row, dim, dim_for_qubits(n - j), g(0, 0), g(0, 1), g(1, 0),
              g(1, 1));
  }
}

/// Runs f(first_row, last_row) over a partition of [0, rows) on up to
/// `threads` threads. Rows are independent, so any split is exact.
template <typename F>
void for_row_blocks(Index rows, int threads, F&& f) {
  threads = std::max(1, std::min<int>(threads, static_cast<int>(rows)));
  if (threads == 1) {
    f(Index{0}, rows);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  const Index chunk = (rows + threads - 1) / threads;
  for (Index first = 0; first < rows; first += chunk) {
    const Index last = std::min(rows, first + chunk);
    pool.emplace_back([&f, first, last] { f(first, last); });
  }
}

}  // namespace kernel

/// Complex multiplications performed by apply_snapshot_right on an n-qubit
/// matrix: n sweeps, d/2 pairs per row, 4 products per pair, d rows.
constexpr std::uint64_t snapshot_sweep_multiplications(int n) noexcept {
  const std::uint64_t d = std::uint64_t{1} << n;
  return 2ull * static_cast<std::uint64_t>(n) * d * d;
}

/// M <- M * (I_{2^(j-1)} (x) G (x) I_{2^(n-j)}) by disjoint column-pair
/// updates; `qubit` is 1-based.
template <typename Derived>
void right_sweep(Eigen::MatrixBase<Derived>& m, const Matrix2c& g, int qubit) {
  check_square(m);
  const int n = qubits_for_dim(m.cols());
  if (qubit < 1 || qubit > n) {
    throw IndexOutOfRange("qubit " + std::to_string(qubit) + " outside 1.." +
                          std::to_string(n));
  }
  const Index dim = m.cols();
  const Index stride = dim_for_qubits(n - qubit);
  using T = typename Derived::Scalar;
  const T alpha = g(0, 0), beta = g(0, 1), gamma = g(1, 0), delta = g(1, 1);
  for (Index base = 0; base < dim; base += 2 * stride) {
    for (Index k = 0; k < stride; ++k) {
      const Index u0 = base + k;
      const Index u1 = u0 + stride;
      for (Index i = 0; i < m.rows(); ++i) {
        const T x0 = m(i, u0);
        const T x1 = m(i, u1);
        m(i, u0) = kernel::mul(alpha, x0) + kernel::mul(gamma, x1);
        m(i, u1) = kernel::mul(beta, x0) + kernel::mul(delta, x1);
      }
    }
  }
}

/// M <- (I_{2^(j-1)} (x) G (x) I_{2^(n-j)}) * M by disjoint row-pair updates.
template <typename Derived>
void left_sweep(Eigen::MatrixBase<Derived>& m, const Matrix2c& g, int qubit) {
  check_square(m);
  const int n = qubits_for_dim(m.rows());
  if (qubit < 1 || qubit > n) {
    throw IndexOutOfRange("qubit " + std::to_string(qubit) + " outside 1.." +
                          std::to_string(n));
  }
  const Index dim = m.rows();
  const Index stride = dim_for_qubits(n - qubit);
  using T = typename Derived::Scalar;
  const T g00 = g(0, 0), g01 = g(0, 1), g10 = g(1, 0), g11 = g(1, 1);
  for (Index base = 0; base < dim; base += 2 * stride) {
    for (Index k = 0; k < stride; ++k) {
      const Index u0 = base + k;
      const Index u1 = u0 + stride;
      for (Index c = 0; c < m.cols(); ++c) {
        const T x0 = m(u0, c);
        const T x1 = m(u1, c);
        m(u0, c) = kernel::mul(g00, x0) + kernel::mul(g01, x1);
        m(u1, c) = kernel::mul(g10, x0) + kernel::mul(g11, x1);
      }
    }
  }
}

/// M <- M * S. Equivalent to right_sweep for j = 1..n; row-major storage
/// runs all n sweeps on one row while it is cache resident.
template <typename Derived>
void apply_snapshot_right(Eigen::PlainObjectBase<Derived>& m,
                          const FactorizedSnapshot& s, int threads = 1) {
  check_square(m);
  if (m.cols() != dim_for_qubits(s.num_qubits())) {
    throw DimensionMismatch("matrix dimension " + std::to_string(m.cols()) +
                            " does not match a " +
                            std::to_string(s.num_qubits()) + "-qubit snapshot");
  }
  if constexpr (Derived::IsRowMajor) {
    kernel::for_row_blocks(m.rows(), threads, [&](Index first, Index last) {
      for (Index i = first; i < last; ++i) {
        kernel::apply_snapshot_to_row(m.row(i).data(), s);
      }
    });
  } else {
    for (int j = 1; j <= s.num_qubits(); ++j) {
      right_sweep(m, s.factor(j).matrix, j);
    }
  }
}

}  // namespace ptm
