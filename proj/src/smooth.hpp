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

#ifndef FPMUL_SMOOTH_HPP
#define FPMUL_SMOOTH_HPP

#include <vector>

#include "prime_field.hpp"

namespace fpmul {

/// Exact prime-power factorization, kept alongside every smooth integer the
/// planner produces.
struct Factorization {
  std::vector<std::pair<u64, unsigned>> powers;  // (prime, exponent), primes ascending

  BigInt value() const;
  std::vector<u64> distinct_primes() const;
  bool empty() const { return powers.empty(); }
  void merge(const Factorization& other);
};

/// H(lambda): product of all primes q with q - 1 dividing lambda. Always
/// squarefree and (lambda + 1)-smooth.
struct HValue {
  BigInt h;
  std::vector<u64> primes;  // ascending
};
HValue compute_H(u64 lambda);

struct SmoothConfig {
  u64 target_multiple = 2;
  u64 lambda_max = 512;
  bool accidental_factors = true;
};

/// Smooth divisor of p^lambda - 1. The base value drops p from H(lambda)
/// when present; with accidental factors enabled, the full (lambda+1)-smooth
/// part of p^lambda - 1 is taken instead (prime powers included).
struct MValue {
  BigInt m;
  Factorization factors;
};
MValue build_M(const PrimeContext& ctx, u64 lambda, const SmoothConfig& cfg);

// Smallest lambda >= 2 with build_M(p, lambda) >= cfg.target_multiple * n.
// Scans upward with a stride sieve over q - 1; throws kSearchExhausted past
// cfg.lambda_max.
u64 choose_lambda(const PrimeContext& ctx, const BigInt& n, const SmoothConfig& cfg);

/// Transform lengths packaged from the atoms of M: a minimal prefix of the
/// ascending atom list reaches the long target L, then entries below the
/// short target S are merged pairwise (two smallest first; ties broken by
/// value then insertion order). Atoms are whole prime powers and are never
/// split.
struct PackedLengths {
  std::vector<u64> lengths;               // ascending
  std::vector<Factorization> factors;     // factorization per length
  u64 product = 0;                        // N = product of lengths
};

// Requires 2 <= S < L < value(m_factors); violations raise kParameter, as
// does any packaged length overflowing 63 bits.
PackedLengths package_lengths(const Factorization& m_factors, u64 big_target, u64 small_target);

/// Everything the planner needs from the search: lambda, M, and the
/// packaged lengths.
struct SmoothParams {
  u64 lambda = 0;
  BigInt m;
  Factorization m_factors;
  PackedLengths packed;
  u64 smooth_bound = 0;  // lambda + 1
};

}  // namespace fpmul

#endif  // FPMUL_SMOOTH_HPP
