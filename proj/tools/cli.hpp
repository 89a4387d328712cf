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

// The `ptm` command line: simulate, estimate, witness, bench, verify.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "ptm/core.hpp"
#include "ptm/errors.hpp"

namespace ptm::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kDataError = 2, kVerifyFailed = 3 };

/// A rejected configuration. The message names the offending flag.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// `B=3-4`, `B=1,3`, `3-4`, `1,3` (qubit sets, 1-based; `B=` alone is the
/// empty set) or a bare integer bitmask (`12`, `0b1100`, `0xc`) with
/// qubit 1 = bit 0. Throws UsageError.
Bipartition parse_partition(std::string_view text, int n);

/// `8-11` or `8,9,10`. Throws UsageError.
std::vector<int> parse_int_list(std::string_view text, std::string_view flag);

/// `args` excludes the program name. Output files default to `out`.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace ptm::cli
