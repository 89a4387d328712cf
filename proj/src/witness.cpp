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

#include "ptm/witness.hpp"

#include <algorithm>
#include <cmath>

#include "ptm/errors.hpp"

namespace ptm {

std::vector<double> newton_girard(std::span<const double> p) {
  const std::size_t m = p.size();
  std::vector<double> e(m + 1, 0.0);
  e[0] = 1.0;
  for (std::size_t k = 1; k <= m; ++k) {
    double s = 0.0;
    for (std::size_t r = 1; r <= k; ++r) {
      const double term = e[k - r] * p[r - 1];
      s += (r % 2 == 1) ? term : -term;
    }
    e[k] = s / static_cast<double>(k);
  }
  return {e.begin() + 1, e.end()};
}

std::string to_string(const Verdict& v) {
  if (v.entangled()) return "entangled:" + std::to_string(v.order);
  return "inconclusive";
}

Verdict verdict_from_string(const std::string& s) {
  if (s == "inconclusive") return Verdict::inconclusive();
  const std::string prefix = "entangled:";
  if (s.rfind(prefix, 0) == 0) {
    try {
      std::size_t used = 0;
      const int k = std::stoi(s.substr(prefix.size()), &used);
      if (used == s.size() - prefix.size() && k >= 1) return Verdict::entangled(k);
    } catch (const std::exception&) {
    }
  }
  throw InvalidArgument("bad verdict '" + s + "'");
}

Verdict certify(std::span<const double> e, double tol) {
  if (tol < 0.0) throw InvalidArgument("certification tolerance must be >= 0");
  for (std::size_t k = 0; k < e.size(); ++k) {
    if (e[k] < -tol) return Verdict::entangled(static_cast<int>(k + 1));
  }
  return Verdict::inconclusive();
}

Verdict certify(std::span<const double> e, std::span<const double> tol) {
  if (tol.size() != e.size()) {
    throw DimensionMismatch("need one tolerance per e_k");
  }
  for (std::size_t k = 0; k < e.size(); ++k) {
    if (tol[k] < 0.0) throw InvalidArgument("certification tolerance must be >= 0");
    if (e[k] < -tol[k]) return Verdict::entangled(static_cast<int>(k + 1));
  }
  return Verdict::inconclusive();
}

WitnessReport witness_report(std::span<const double> p, double tol) {
  WitnessReport rep;
  rep.moments.assign(p.begin(), p.end());
  const std::vector<double> e = newton_girard(p);
  rep.elementary.reserve(e.size() + 1);
  rep.elementary.push_back(1.0);
  rep.elementary.insert(rep.elementary.end(), e.begin(), e.end());
  rep.verdict = certify(e, tol);
  rep.margin = e.empty() ? 1.0 : *std::min_element(e.begin(), e.end());
  return rep;
}

std::vector<double> three_sigma_tolerances(
    std::span<const std::vector<double>> e_reps) {
  if (e_reps.size() < 2) {
    throw InvalidArgument("need at least two repetitions for a scatter estimate");
  }
  const std::size_t m = e_reps.front().size();
  const double reps = static_cast<double>(e_reps.size());
  std::vector<double> tol(m, 0.0);
  for (std::size_t k = 0; k < m; ++k) {
    double mean = 0.0;
    for (const auto& e : e_reps) {
      if (e.size() != m) throw DimensionMismatch("ragged repetition table");
      mean += e[k];
    }
    mean /= reps;
    double var = 0.0;
    for (const auto& e : e_reps) var += (e[k] - mean) * (e[k] - mean);
    var /= reps - 1.0;
    tol[k] = 3.0 * std::sqrt(var / reps);
  }
  return tol;
}

}  // namespace ptm
