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

// End-to-end checks behind `ptm verify` and the acceptance binary. Each
// check is self-contained and deterministic given its seed.

#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace ptm {

struct CheckResult {
  std::string id;  // "1".."7" for the acceptance criteria, "T" for extras
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct VerifyOptions {
  std::uint64_t seed = 2026;
  bool include_scaling = true;
  std::vector<int> scaling_qubits{8, 9, 10, 11};
  int scaling_reps = 5;
  int scaling_warmup = 1;
  int cases = 200;      // random cases for the equivalence checks
  int bell_runs = 10000;
};

CheckResult check_oracle_equivalence(const VerifyOptions& opt);
CheckResult check_pauli2_equivalence(const VerifyOptions& opt);
CheckResult check_identities(const VerifyOptions& opt);
CheckResult check_exact_witness(const VerifyOptions& opt);
CheckResult check_unbiasedness(const VerifyOptions& opt);
CheckResult check_scaling(const VerifyOptions& opt);
CheckResult check_negative_control(const VerifyOptions& opt);
/// Brute force and estimator agree on a shot file with one flipped bit.
CheckResult check_tampered_file(const VerifyOptions& opt);

using CheckListener = std::function<void(const CheckResult&)>;

/// Runs every check in id order; the scaling check only when
/// opt.include_scaling is set. Exceptions inside a check are reported as a
/// failure of that check.
std::vector<CheckResult> run_verify(const VerifyOptions& opt,
                                    const CheckListener& on_result = {});

/// One line per check: `PASS [id] name (seconds) detail`.
void print_check(std::ostream& out, const CheckResult& r);

}  // namespace ptm
