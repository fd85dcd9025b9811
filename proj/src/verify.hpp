// Copyright 2026 The fpmul Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FPMUL_VERIFY_HPP
#define FPMUL_VERIFY_HPP

#include <optional>
#include <string>
#include <vector>

#include "multiplier.hpp"

namespace fpmul {

/// Randomized oracle-equivalence sweep: the fast paths against the naive
/// references (multiply vs schoolbook, transform vs direct evaluation,
/// weighted-split pipeline vs naive cyclic, chirp transform vs direct).
struct VerifyOptions {
  u64 max_n = 512;
  std::vector<u64> primes = {2, 3, 5, 7, 13, 101, (u64{1} << 31) - 1};
  u64 seed = 1;
  u64 cases = 1200;
  // Test fixture: corrupt the result of this case index to exercise the
  // failure reporting path. Negative = disabled.
  long long inject_fault_at = -1;
};

struct VerifyFailure {
  std::string kind;
  u64 p = 0;
  u64 n = 0;
  u64 case_seed = 0;
};

struct VerifyResult {
  u64 cases_run = 0;
  u64 failures = 0;
  u64 multiply_cases = 0;
  u64 dft_cases = 0;
  u64 cf_cases = 0;
  u64 bluestein_cases = 0;
  std::optional<VerifyFailure> first_failure;
};

VerifyResult run_verify(const VerifyOptions& opts);

// 64-bit fold of the semantic (trimmed) coefficient words; equal products
// hash equally regardless of trailing-zero padding.
u64 poly_checksum(const FpPoly& poly);

}  // namespace fpmul

#endif  // FPMUL_VERIFY_HPP
