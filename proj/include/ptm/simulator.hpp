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

// Synthetic shot streams: a small factory of reference states and Born-rule
// sampling of randomized local Pauli measurements.

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "ptm/core.hpp"
#include "ptm/oracle.hpp"

namespace ptm {

struct StateSpec {
  enum class Kind { Bell, Ghz, Werner, ProductZero, RandomPure, FromFile };

  Kind kind = Kind::ProductZero;
  int n = 1;
  double q = 0.0;           // Werner mixing weight
  std::uint64_t seed = 0;   // RandomPure
  std::string path;         // FromFile

  static StateSpec bell() { return {Kind::Bell, 2, 0.0, 0, {}}; }
  static StateSpec ghz(int n) { return {Kind::Ghz, n, 0.0, 0, {}}; }
  static StateSpec werner(double q) { return {Kind::Werner, 2, q, 0, {}}; }
  static StateSpec product_zero(int n) { return {Kind::ProductZero, n, 0.0, 0, {}}; }
  static StateSpec random_pure(int n, std::uint64_t seed) {
    return {Kind::RandomPure, n, 0.0, seed, {}};
  }
  static StateSpec from_file(std::string path) {
    return {Kind::FromFile, 0, 0.0, 0, std::move(path)};
  }

  /// Parses `bell`, `ghz`, `werner:<q>`, `zero`, `random:<seed>` or
  /// `file:<path>` for `n` qubits (ignored for file states). Bell and
  /// Werner states require n = 2. Throws InvalidArgument.
  static StateSpec parse(std::string_view text, int n);

  /// Inverse of parse, without the qubit count.
  std::string to_string() const;
};

/// Throws InvalidArgument for an invalid spec and SizeLimitExceeded above
/// the dense limit.
DensityMatrix build_state(const StateSpec& spec,
                          int dense_limit = kDefaultDenseLimit);

/// Reproducible random source: std::mt19937_64 seeded through std::seed_seq
/// with the 32-bit halves of (seed, stream). Both algorithms are fully
/// specified by the C++ standard, and every draw below is built from raw
/// 64-bit outputs, so streams are identical across platforms.
class ShotRng {
 public:
  explicit ShotRng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on {0, ..., bound - 1} by rejection.
  std::uint64_t below(std::uint64_t bound);
  /// Standard normal (Box-Muller).
  double normal();

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
};

/// Re tr[(I (x) G (x) I) M] with G on `qubit`, in O(d).
double local_expectation(const DenseMatrix& m, const Matrix2c& g, int qubit);

/// i.i.d. uniform axes; outcome bits from the joint Born distribution by
/// sequential conditioning (measure qubit 1, collapse, renormalize, ...).
/// Throws NumericalError if a conditional probability leaves
/// [-1e-9, 1 + 1e-9].
ShotRecord sample_shot(const DensityMatrix& rho, ShotRng& rng);

/// Outcome bits for fixed axes.
ShotRecord sample_outcomes(const DensityMatrix& rho,
                           std::vector<PauliAxis> axes, ShotRng& rng);

std::vector<ShotRecord> sample_shots(const DensityMatrix& rho,
                                     std::uint64_t count, ShotRng& rng);

}  // namespace ptm
