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

// Test-only helpers. The reference implementations here are deliberately
// naive and share no code with the library kernels they check.

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ptm/core.hpp"
#include "ptm/linalg.hpp"

namespace ptm::test {

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20260314);
  return gen;
}

inline int uniform_int(int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng());
}

inline ShotRecord random_shot(int n, std::mt19937_64& g = rng()) {
  std::uniform_int_distribution<int> axis(1, 3), bit(0, 1);
  std::vector<PauliAxis> axes(n);
  std::vector<std::uint8_t> bits(n);
  for (int j = 0; j < n; ++j) {
    axes[j] = static_cast<PauliAxis>(axis(g));
    bits[j] = static_cast<std::uint8_t>(bit(g));
  }
  return ShotRecord(std::move(axes), std::move(bits));
}

inline std::vector<ShotRecord> random_shots(int n, int count,
                                            std::mt19937_64& g = rng()) {
  std::vector<ShotRecord> out;
  for (int t = 0; t < count; ++t) out.push_back(random_shot(n, g));
  return out;
}

inline Bipartition random_partition(int n, std::mt19937_64& g = rng()) {
  const std::uint64_t mask =
      std::uniform_int_distribution<std::uint64_t>(0, (std::uint64_t{1} << n) - 1)(g);
  return Bipartition(n, mask);
}

inline DenseMatrix random_matrix(Index d, std::mt19937_64& g = rng()) {
  std::normal_distribution<double> nd;
  DenseMatrix m(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) m(i, j) = Complex(nd(g), nd(g));
  return m;
}

inline Matrix2c random_factor(std::mt19937_64& g = rng()) {
  std::normal_distribution<double> nd;
  Matrix2c m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m(i, j) = Complex(nd(g), nd(g));
  return m;
}

/// Plain triple loop, i-j-k order.
inline DenseMatrix naive_matmul(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix c = DenseMatrix::Zero(a.rows(), b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < b.cols(); ++j) {
      Complex s = 0.0;
      for (Index k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

/// S(x, y) = prod_j G_j(x_j, y_j), x_1 the most significant bit.
inline DenseMatrix naive_kron(const std::vector<Matrix2c>& factors) {
  const int n = static_cast<int>(factors.size());
  const Index d = Index{1} << n;
  DenseMatrix s(d, d);
  for (Index x = 0; x < d; ++x)
    for (Index y = 0; y < d; ++y) {
      Complex v = 1.0;
      for (int j = 1; j <= n; ++j) {
        const int xj = (x >> (n - j)) & 1;
        const int yj = (y >> (n - j)) & 1;
        v *= factors[j - 1](xj, yj);
      }
      s(x, y) = v;
    }
  return s;
}

inline DenseMatrix naive_kron(const FactorizedSnapshot& s) {
  std::vector<Matrix2c> f;
  for (const auto& lf : s.factors()) f.push_back(lf.matrix);
  return naive_kron(f);
}

/// I_{2^(j-1)} (x) G (x) I_{2^(n-j)}.
inline DenseMatrix embed_factor(int n, const Matrix2c& g, int qubit) {
  std::vector<Matrix2c> f(n, Matrix2c::Identity());
  f[qubit - 1] = g;
  return naive_kron(f);
}

inline double rel_frobenius(const DenseMatrix& got, const DenseMatrix& want) {
  const double scale = want.norm();
  const double diff = (got - want).norm();
  return scale > 0 ? diff / scale : diff;
}

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1.0);
}

}  // namespace ptm::test
