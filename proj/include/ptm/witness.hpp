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

// Entanglement certificates from PT moments. Separable states have a
// positive semidefinite partial transpose, so every elementary symmetric
// polynomial e_k of its spectrum is nonnegative; a negative e_k certifies
// entanglement across the cut. The test is one-sided.

#pragma once

#include <span>
#include <string>
#include <vector>

namespace ptm {

/// e_1..e_m from power sums p_1..p_m: k e_k = sum_{r=1}^k (-1)^(r-1) e_{k-r} p_r.
std::vector<double> newton_girard(std::span<const double> p);

struct Verdict {
  enum class Kind { EntangledCertified, Inconclusive };
  Kind kind = Kind::Inconclusive;
  int order = 0;  // k of the certifying e_k; 0 when inconclusive

  static Verdict inconclusive() { return {}; }
  static Verdict entangled(int k) { return {Kind::EntangledCertified, k}; }

  bool entangled() const noexcept { return kind == Kind::EntangledCertified; }

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

/// "entangled:<k>" or "inconclusive".
std::string to_string(const Verdict& v);
/// Inverse of to_string; throws InvalidArgument.
Verdict verdict_from_string(const std::string& s);

/// Smallest k with e_k < -tol. `e` holds e_1..e_m.
Verdict certify(std::span<const double> e, double tol);
/// Per-order tolerances, tol[k-1] for e_k.
Verdict certify(std::span<const double> e, std::span<const double> tol);

struct WitnessReport {
  std::vector<double> moments;     // p_1..p_m
  std::vector<double> elementary;  // e_0..e_m, e_0 = 1
  Verdict verdict;
  double margin = 0.0;  // min_{k >= 1} e_k
};

WitnessReport witness_report(std::span<const double> p, double tol);

/// Tolerances for certifying from noisy estimates: 3 standard errors of
/// each e_k across independent repetitions. `e_reps[i]` holds e_1..e_m of
/// repetition i. Needs at least two repetitions.
std::vector<double> three_sigma_tolerances(
    std::span<const std::vector<double>> e_reps);

}  // namespace ptm
