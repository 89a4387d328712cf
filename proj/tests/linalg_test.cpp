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

#include "ptm/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "gtest/gtest.h"

#include "test_util.hpp"

using namespace ptm;

namespace {

DenseMatrix diag(std::initializer_list<double> v) {
  DenseMatrix m = DenseMatrix::Zero(v.size(), v.size());
  Index i = 0;
  for (double x : v) m(i, i) = x, ++i;
  return m;
}

FactorizedSnapshot random_snapshot(int n) {
  return snapshot_from_shot(test::random_shot(n), test::random_partition(n));
}

// Scalar that counts the complex products the sweep kernel performs.
struct Counted {
  Complex v;
  static inline std::uint64_t products = 0;
};
Counted operator*(const Complex& a, const Counted& b) {
  ++Counted::products;
  return {a * b.v};
}
Counted operator+(const Counted& a, const Counted& b) { return {a.v + b.v}; }

}  // namespace

TEST(Matmul, IdentityAndDiagonal) {
  const DenseMatrix m = test::random_matrix(4);
  EXPECT_EQ(matmul(DenseMatrix::Identity(4, 4), m), m);
  EXPECT_EQ(matmul(diag({2, -1}), diag({-1, 2})), diag({-2, -2}));
}

TEST(Matmul, MatchesIndependentTripleLoop) {
  for (int trial = 0; trial < 10; ++trial) {
    const DenseMatrix a = test::random_matrix(8), b = test::random_matrix(8);
    EXPECT_LE(test::rel_frobenius(matmul(a, b), test::naive_matmul(a, b)), 1e-13);
  }
}

TEST(Matmul, DimensionMismatch) {
  EXPECT_THROW(matmul(DenseMatrix(2, 2), DenseMatrix(4, 4)), DimensionMismatch);
}

TEST(Trace, Examples) {
  EXPECT_EQ(trace(DenseMatrix::Identity(8, 8)), Complex(8.0, 0.0));
  EXPECT_EQ(trace(diag({2, -1})), Complex(1.0, 0.0));
  for (int trial = 0; trial < 50; ++trial) {
    const Complex t = trace(kron_expand(random_snapshot(test::uniform_int(1, 6))));
    EXPECT_NEAR(std::abs(t - Complex(1.0, 0.0)), 0.0, 1e-12);
  }
}

TEST(KronExpand, Examples) {
  const ShotRecord z0({PauliAxis::Z}, {0});
  const FactorizedSnapshot one = snapshot_from_shot(z0, Bipartition::empty(1));
  EXPECT_EQ(kron_expand(one), diag({2, -1}));

  const ShotRecord zz({PauliAxis::Z, PauliAxis::Z}, {0, 0});
  EXPECT_EQ(kron_expand(snapshot_from_shot(zz, Bipartition::empty(2))),
            diag({4, -2, -2, 1}));
}

TEST(KronExpand, MatchesEntrywiseDefinition) {
  for (int n = 1; n <= 6; ++n) {
    const FactorizedSnapshot s = random_snapshot(n);
    EXPECT_EQ(kron_expand(s), test::naive_kron(s));
  }
}

TEST(KronExpand, SizeLimit) {
  const FactorizedSnapshot s = random_snapshot(4);
  EXPECT_THROW(kron_expand(s, 3), SizeLimitExceeded);
  EXPECT_NO_THROW(kron_expand(s, 4));
}

TEST(RightSweep, TwoByTwoDirectProduct) {
  DenseMatrix m(2, 2);
  m << 1, 2, 3, 4;
  Matrix2c g;
  g << 2, 0, 0, -1;
  right_sweep(m, g, 1);
  DenseMatrix want(2, 2);
  want << 2, -2, 6, -4;
  EXPECT_EQ(m, want);
}

TEST(RightSweep, IdentityFactorLeavesMatrixUnchanged) {
  const DenseMatrix m0 = test::random_matrix(16);
  for (int j = 1; j <= 4; ++j) {
    DenseMatrix m = m0;
    right_sweep(m, Matrix2c::Identity(), j);
    EXPECT_EQ(m, m0);
  }
}

TEST(RightSweep, MatchesDenseProductWithEmbeddedFactor) {
  for (int trial = 0; trial < 5; ++trial) {
    for (int j = 1; j <= 3; ++j) {
      const DenseMatrix m0 = test::random_matrix(8);
      const Matrix2c g = test::random_factor();
      DenseMatrix m = m0;
      right_sweep(m, g, j);
      const DenseMatrix want = test::naive_matmul(m0, test::embed_factor(3, g, j));
      EXPECT_LE(test::rel_frobenius(m, want), 1e-12) << "qubit " << j;
    }
  }
}

TEST(RightSweep, IndexOutOfRange) {
  DenseMatrix m = test::random_matrix(8);
  EXPECT_THROW(right_sweep(m, Matrix2c::Identity(), 0), IndexOutOfRange);
  EXPECT_THROW(right_sweep(m, Matrix2c::Identity(), 4), IndexOutOfRange);
  DenseMatrix odd(6, 6);
  EXPECT_THROW(right_sweep(odd, Matrix2c::Identity(), 1), DimensionMismatch);
}

TEST(LeftSweep, MatchesDenseProductWithEmbeddedFactor) {
  for (int j = 1; j <= 3; ++j) {
    const DenseMatrix m0 = test::random_matrix(8);
    const Matrix2c g = test::random_factor();
    DenseMatrix m = m0;
    left_sweep(m, g, j);
    EXPECT_LE(test::rel_frobenius(m, test::naive_matmul(test::embed_factor(3, g, j), m0)),
              1e-12);
  }
}

TEST(ColumnPairs, PartitionTheColumnSet) {
  for (int n = 1; n <= 6; ++n) {
    const Index d = dim_for_qubits(n);
    for (int j = 1; j <= n; ++j) {
      const Index stride = dim_for_qubits(n - j);
      std::set<Index> seen;
      Index pairs = 0;
      for (Index base = 0; base < d; base += 2 * stride) {
        for (Index k = 0; k < stride; ++k) {
          const Index u0 = base + k, u1 = u0 + stride;
          EXPECT_EQ(u0 ^ u1, stride);  // differ only in the bit of qubit j
          EXPECT_TRUE(seen.insert(u0).second);
          EXPECT_TRUE(seen.insert(u1).second);
          ++pairs;
        }
      }
      EXPECT_EQ(pairs, d / 2);
      EXPECT_EQ(static_cast<Index>(seen.size()), d);
    }
  }
}

TEST(ApplySnapshotRight, IdentityGivesExpandedSnapshot) {
  for (int n = 1; n <= 5; ++n) {
    const FactorizedSnapshot s = random_snapshot(n);
    DenseMatrix m = DenseMatrix::Identity(dim_for_qubits(n), dim_for_qubits(n));
    apply_snapshot_right(m, s);
    EXPECT_LE(test::rel_frobenius(m, kron_expand(s)), 1e-12);
  }
}

TEST(ApplySnapshotRight, MatchesDenseOracle) {
  for (int n = 1; n <= 6; ++n) {
    for (int trial = 0; trial < 4; ++trial) {
      const FactorizedSnapshot s = random_snapshot(n);
      const DenseMatrix m0 = test::random_matrix(dim_for_qubits(n));
      DenseMatrix m = m0;
      apply_snapshot_right(m, s);
      EXPECT_LE(test::rel_frobenius(m, test::naive_matmul(m0, test::naive_kron(s))),
                1e-11)
          << "n=" << n;
    }
  }
}

TEST(ApplySnapshotRight, TwoSuccessiveSnapshots) {
  const int n = 4;
  const FactorizedSnapshot s1 = random_snapshot(n), s2 = random_snapshot(n);
  const DenseMatrix m0 = test::random_matrix(16);
  DenseMatrix m = m0;
  apply_snapshot_right(m, s1);
  apply_snapshot_right(m, s2);
  const DenseMatrix want =
      test::naive_matmul(test::naive_matmul(m0, test::naive_kron(s1)), test::naive_kron(s2));
  EXPECT_LE(test::rel_frobenius(m, want), 1e-10);
}

TEST(ApplySnapshotRight, BitIdenticalToSequentialRightSweeps) {
  for (int n = 1; n <= 6; ++n) {
    const FactorizedSnapshot s = random_snapshot(n);
    const DenseMatrix m0 = test::random_matrix(dim_for_qubits(n));
    DenseMatrix fused = m0, sequential = m0;
    apply_snapshot_right(fused, s);
    for (int j = 1; j <= n; ++j) right_sweep(sequential, s.factor(j).matrix, j);
    EXPECT_EQ(fused, sequential);

    // Column-major storage takes the generic path.
    Eigen::MatrixXcd colmajor = m0;
    apply_snapshot_right(colmajor, s);
    EXPECT_EQ(DenseMatrix(colmajor), sequential);
  }
}

TEST(ApplySnapshotRight, SweepOrderIrrelevant) {
  const int n = 5;
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 1);
  for (int trial = 0; trial < 10; ++trial) {
    const FactorizedSnapshot s = random_snapshot(n);
    const DenseMatrix m0 = test::random_matrix(32);
    DenseMatrix ref = m0;
    apply_snapshot_right(ref, s);
    std::shuffle(order.begin(), order.end(), test::rng());
    DenseMatrix m = m0;
    for (int j : order) right_sweep(m, s.factor(j).matrix, j);
    EXPECT_LE(test::rel_frobenius(m, ref), 1e-12);
  }
}

TEST(ApplySnapshotRight, ThreadedRowsAreIdentical) {
  const FactorizedSnapshot s = random_snapshot(6);
  const DenseMatrix m0 = test::random_matrix(64);
  DenseMatrix one = m0, many = m0;
  apply_snapshot_right(one, s, 1);
  apply_snapshot_right(many, s, 3);
  EXPECT_EQ(one, many);
}

TEST(ApplySnapshotRight, MultiplicationCountIsTwoNDSquared) {
  for (int n = 1; n <= 6; ++n) {
    const FactorizedSnapshot s = random_snapshot(n);
    const Index d = dim_for_qubits(n);
    std::vector<Counted> rows(static_cast<std::size_t>(d * d), Counted{1.0});
    Counted::products = 0;
    for (Index i = 0; i < d; ++i) kernel::apply_snapshot_to_row(rows.data() + i * d, s);
    EXPECT_EQ(Counted::products, snapshot_sweep_multiplications(n));
    EXPECT_EQ(Counted::products, 2ull * n * d * d);
  }
}

TEST(ApplySnapshotRight, DimensionMismatch) {
  DenseMatrix m = test::random_matrix(8);
  EXPECT_THROW(apply_snapshot_right(m, random_snapshot(2)), DimensionMismatch);
}
