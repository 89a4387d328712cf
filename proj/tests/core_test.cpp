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

#include "gtest/gtest.h"

#include "ptm/errors.hpp"
#include "test_util.hpp"

using namespace ptm;

namespace {

Matrix2c mat(Complex a, Complex b, Complex c, Complex d) {
  Matrix2c m;
  m << a, b, c, d;
  return m;
}

const Complex kI(0.0, 1.0);

}  // namespace

TEST(ChiBit, OnlyYInsideBToggles) {
  EXPECT_EQ(chi_bit(PauliAxis::Y, true), 1);
  EXPECT_EQ(chi_bit(PauliAxis::Y, false), 0);
  EXPECT_EQ(chi_bit(PauliAxis::X, true), 0);
  EXPECT_EQ(chi_bit(PauliAxis::Z, true), 0);
  EXPECT_EQ(chi_bit(PauliAxis::X, false), 0);
}

TEST(PauliAxis, EncodingIsBijectionOntoOneTwoThree) {
  EXPECT_EQ(encode(PauliAxis::X), 1);
  EXPECT_EQ(encode(PauliAxis::Y), 2);
  EXPECT_EQ(encode(PauliAxis::Z), 3);
  for (char c : {'X', 'Y', 'Z'}) EXPECT_EQ(axis_char(axis_from_char(c)), c);
  EXPECT_THROW(axis_from_char('I'), InvalidArgument);
}

TEST(LocalFactor, DirectSubstitution) {
  const LocalFactor z = local_factor(PauliAxis::Z, 0, 0);
  EXPECT_EQ(z.matrix, mat(2.0, 0.0, 0.0, -1.0));
  EXPECT_EQ(z.xi, 1);

  const LocalFactor x = local_factor(PauliAxis::X, 1, 0);
  EXPECT_EQ(x.matrix, mat(0.5, -1.5, -1.5, 0.5));
  EXPECT_EQ(x.xi, -1);

  // b xor chi = 1 flips the Y sign: 1/2 I - 3/2 Y.
  const LocalFactor y = local_factor(PauliAxis::Y, 0, 1);
  EXPECT_EQ(y.matrix, mat(0.5, 1.5 * kI, -1.5 * kI, 0.5));
  EXPECT_EQ(y.xi, -1);
}

TEST(LocalFactor, UnitTraceHermitianAndDyadicEntries) {
  for (PauliAxis a : {PauliAxis::X, PauliAxis::Y, PauliAxis::Z}) {
    for (int b = 0; b < 2; ++b) {
      for (int chi = 0; chi < 2; ++chi) {
        const LocalFactor f = local_factor(a, b, chi);
        EXPECT_EQ(f.matrix.trace(), Complex(1.0, 0.0));
        EXPECT_EQ(f.matrix, f.matrix.adjoint().eval());
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j) {
            const Complex v = f.matrix(i, j);
            const bool allowed = v == 0.0 || v == 0.5 || v == -0.5 || v == 1.5 ||
                                 v == -1.5 || v == 1.5 * kI || v == -1.5 * kI ||
                                 v == 2.0 || v == -1.0;
            EXPECT_TRUE(allowed) << v;
          }
      }
    }
  }
}

TEST(Snapshot, SingleQubitZ) {
  const ShotRecord shot({PauliAxis::Z}, {0});
  const FactorizedSnapshot s = snapshot_from_shot(shot, Bipartition::empty(1));
  ASSERT_EQ(s.num_qubits(), 1);
  EXPECT_EQ(s.factor(1).matrix, mat(2.0, 0.0, 0.0, -1.0));
}

TEST(Snapshot, ChiTogglesOnlyQubitsInB) {
  const ShotRecord shot({PauliAxis::Y, PauliAxis::Y}, {0, 0});
  const FactorizedSnapshot s = snapshot_from_shot(shot, Bipartition(2, 0b10));
  const Matrix2c y = pauli_matrix(PauliAxis::Y);
  EXPECT_EQ(s.factor(1).matrix, (0.5 * Matrix2c::Identity() + 1.5 * y).eval());
  EXPECT_EQ(s.factor(2).matrix, (0.5 * Matrix2c::Identity() - 1.5 * y).eval());
}

TEST(Snapshot, DimensionMismatch) {
  const ShotRecord shot({PauliAxis::Z}, {0});
  EXPECT_THROW(snapshot_from_shot(shot, Bipartition::empty(2)), DimensionMismatch);
}

TEST(Snapshot, PropertiesOverRandomShots) {
  auto& g = test::rng();
  for (int trial = 0; trial < 300; ++trial) {
    const int n = test::uniform_int(1, 8);
    const ShotRecord shot = test::random_shot(n, g);
    const Bipartition part = test::random_partition(n, g);
    const FactorizedSnapshot s = snapshot_from_shot(shot, part);
    const FactorizedSnapshot plain = snapshot_from_shot(shot, Bipartition::empty(n));

    Complex tr = 1.0;
    for (int j = 1; j <= n; ++j) {
      tr *= s.factor(j).matrix.trace();
      const bool flips = part.contains(j) && shot.axis(j) == PauliAxis::Y;
      EXPECT_EQ(s.factor(j).xi, flips ? -plain.factor(j).xi : plain.factor(j).xi);
      if (flips) {
        EXPECT_EQ(s.factor(j).matrix, plain.factor(j).matrix.transpose().eval());
      } else {
        EXPECT_EQ(s.factor(j).matrix, plain.factor(j).matrix);
      }
    }
    EXPECT_EQ(tr, Complex(1.0, 0.0));

    // Pure function of its inputs.
    const FactorizedSnapshot again = snapshot_from_shot(shot, part);
    for (int j = 1; j <= n; ++j) EXPECT_EQ(again.factor(j).matrix, s.factor(j).matrix);
  }
}

TEST(ShotRecord, Validation) {
  EXPECT_THROW(ShotRecord({PauliAxis::X}, {0, 1}), DimensionMismatch);
  EXPECT_THROW(ShotRecord({PauliAxis::X}, {2}), InvalidArgument);
  EXPECT_THROW(ShotRecord({}, {}), InvalidArgument);
  const ShotRecord s({PauliAxis::Z, PauliAxis::Y}, {0, 1});
  EXPECT_EQ(s.axis(2), PauliAxis::Y);
  EXPECT_EQ(s.bit(2), 1);
}

TEST(Bipartition, MaskAndRanges) {
  const Bipartition b = Bipartition::range(4, 3, 4);
  EXPECT_EQ(b.mask(), 0b1100u);
  EXPECT_TRUE(b.contains(3));
  EXPECT_FALSE(b.contains(1));
  EXPECT_EQ(b.size(), 2);
  EXPECT_EQ(Bipartition::upper_half(5).mask(), 0b11100u);
  EXPECT_EQ(Bipartition::upper_half(1).mask(), 0b1u);
  EXPECT_EQ(Bipartition::empty(3).size(), 0);
  EXPECT_THROW(Bipartition(2, 0b100), IndexOutOfRange);
  EXPECT_THROW(Bipartition::range(3, 2, 4), IndexOutOfRange);
}
