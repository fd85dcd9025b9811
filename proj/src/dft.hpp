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

#ifndef FPMUL_DFT_HPP
#define FPMUL_DFT_HPP

#include <memory>
#include <vector>

#include "ext_field.hpp"

namespace fpmul {

struct DftConfig {
  std::size_t direct_leaf_max = 8;         // short lengths up to this evaluate directly
  std::size_t bluestein_naive_floor = 32;  // below this, the chirp convolution is naive
};

/// One short transform: direct evaluation for tiny lengths, otherwise
/// Bluestein's chirp conversion to a cyclic convolution with a fixed
/// operand. The convolution recurses through the supplied multiplier above
/// the naive floor.
struct ShortPlan {
  u64 n = 1;
  ExtElement root;  // order n
  bool direct = true;
  ExtVec root_pows;  // n powers, direct path

  // Chirp data. Odd length: f_i = w^((i^2-i)/2), f'_i = w^((i^2+i)/2),
  // G_i = w^(-(i^2+i)/2). Even length (needs w^(n/2) = -1 and odd p):
  // f_i = w^(i^2), f'_i = w^(i^2+i), G_i = w^(-i^2) + w^(-i^2-i); outputs
  // interleave as a_hat[2i] = f_i/2 (c_i + s c_{i+n/2}),
  // a_hat[2i+1] = f'_i/2 (c_i - s c_{i+n/2}) with s = (-1)^(n/2).
  bool even = false;
  bool sigma_negative = false;
  ExtVec f, f_prime;
  ExtVec g_vec;                            // naive-path fixed operand
  std::shared_ptr<const void> g_prepared;  // recursion-path cache (multiplier-owned format)
  bool use_recursion = false;
  ExtElement half;  // 1/2, even case only
};

ShortPlan bluestein_plan(const FieldPtr& field, const ExtElement& omega, u64 n,
                         const PolyMultiplier& mul, const DftConfig& cfg);
// In-place transform of data (length n) using a short plan. `mul` must be
// the multiplier the plan was built with.
void short_dft(const ShortPlan& plan, const FieldPtr& field, const PolyMultiplier& mul,
               std::span<u64> data);

// One-shot convenience: DFT of `a` with respect to omega via the chirp
// conversion. Even n requires omega^(n/2) = -1 and p != 2.
ExtVec bluestein(const FieldPtr& field, const ExtElement& omega, u64 n, const ExtVec& a,
                 const PolyMultiplier& mul, const DftConfig& cfg = {});

// O(n^2) oracle: a_hat[i] = A(omega^i) by Horner evaluation. Checks
// omega^n = 1.
ExtVec dft_direct(const FieldPtr& field, const ExtVec& a, const ExtElement& omega);

/// Immutable mixed-radix transform plan for length N = f_0 * ... * f_{d-1}.
/// The factor list is processed with the last factor innermost; stage
/// twiddle tables are materialized at build time in lexicographic order.
/// Forward and inverse directions share the structure with omega and
/// omega^(-1).
class DftPlan {
 public:
  // Verifies the factor product, omega's exact order (needs N's prime
  // factorization, recovered by trial division), and table consistency.
  static std::shared_ptr<const DftPlan> build(FieldPtr field, u64 n, std::vector<u64> factors,
                                              ExtElement omega, const PolyMultiplier& mul,
                                              const DftConfig& cfg = {});

  const FieldPtr& field() const { return field_; }
  u64 length() const { return n_; }
  const std::vector<u64>& factors() const { return factors_; }
  const ExtElement& omega() const { return omega_; }
  const ExtElement& omega_inv() const { return omega_inv_; }
  // Root tables: entry j is omega^j (resp. omega^-j).
  const ExtVec& root_table() const { return fwd_.roots; }
  const ExtVec& root_table_inv() const { return bwd_.roots; }

  ExtVec dft(const ExtVec& a, const PolyMultiplier& mul) const;
  ExtVec idft(const ExtVec& a_hat, const PolyMultiplier& mul) const;

  // Cyclic convolution via the transform: (1/N) IDFT(DFT(a) . DFT(b)).
  ExtVec cyclic_convolve(const ExtVec& a, const ExtVec& b, const PolyMultiplier& mul) const;
  // Fixed-operand mode: precompute DFT(b) once.
  struct Transformed {
    ExtVec hat;
  };
  Transformed transform_fixed(const ExtVec& b, const PolyMultiplier& mul) const;
  ExtVec cyclic_convolve_fixed(const ExtVec& a, const Transformed& b_hat,
                               const PolyMultiplier& mul) const;

 private:
  struct Direction {
    ExtVec roots;                   // n root powers
    std::vector<ExtVec> twiddles;   // level k in [1, d): size prod(factors[0..k])
    std::vector<std::size_t> leaf;  // factor position -> index into shorts
    std::vector<ShortPlan> shorts;
  };

  DftPlan() = default;
  void build_direction(Direction& dir, const ExtElement& w, const PolyMultiplier& mul,
                       const DftConfig& cfg);
  void execute(const Direction& dir, std::span<u64> data, std::span<u64> scratch,
               const PolyMultiplier& mul) const;
  void exec_level(const Direction& dir, std::size_t level, std::span<u64> data,
                  std::span<u64> scratch, const PolyMultiplier& mul) const;

  FieldPtr field_;
  u64 n_ = 1;
  std::vector<u64> factors_;
  std::vector<u64> level_len_;  // prod factors[0..k]
  ExtElement omega_, omega_inv_, inv_n_;
  Direction fwd_, bwd_;
};

using PlanPtr = std::shared_ptr<const DftPlan>;

}  // namespace fpmul

#endif  // FPMUL_DFT_HPP
