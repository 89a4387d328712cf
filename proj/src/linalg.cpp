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

namespace ptm {

DenseMatrix kron_expand(const FactorizedSnapshot& s, int dense_limit) {
  const int n = s.num_qubits();
  if (n < 1) throw DimensionMismatch("snapshot has no qubits");
  check_dense_limit(n, dense_limit);

  // Grow qubit by qubit: out <- out (x) G_j, so qubit 1 ends up most
  // significant.
  DenseMatrix out = s.factor(1).matrix;
  for (int j = 2; j <= n; ++j) {
    const Matrix2c& g = s.factor(j).matrix;
    const Index k = out.rows();
    DenseMatrix next(2 * k, 2 * k);
    for (Index r = 0; r < k; ++r) {
      for (Index c = 0; c < k; ++c) {
        const Complex v = out(r, c);
        next(2 * r, 2 * c) = v * g(0, 0);
        next(2 * r, 2 * c + 1) = v * g(0, 1);
        next(2 * r + 1, 2 * c) = v * g(1, 0);
        next(2 * r + 1, 2 * c + 1) = v * g(1, 1);
      }
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace ptm
