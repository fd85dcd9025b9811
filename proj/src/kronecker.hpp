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

#ifndef FPMUL_KRONECKER_HPP
#define FPMUL_KRONECKER_HPP

#include <memory>
#include <vector>

#include "prime_field.hpp"

namespace fpmul {

/// Interface for the univariate multiplier that the bivariate substitutions
/// recurse through. The top-level multiplier implements it; tests can plug
/// in the naive oracle instead.
class PolyMultiplier {
 public:
  virtual ~PolyMultiplier() = default;

  virtual FpPoly multiply(const FpPoly& a, const FpPoly& b) const = 0;
  virtual FpPoly cyclic_multiply(const FpPoly& a, const FpPoly& b, std::size_t n) const = 0;

  // Fixed-operand support: prepare caches whatever the strategy can reuse
  // for repeated products against v (a packed integer, a transform).
  // cyclic_multiply_prepared(u, n, h) must equal cyclic_multiply(u, v, n)
  // when h came from prepare_cyclic_fixed(v, n) on the same multiplier.
  virtual std::shared_ptr<const void> prepare_cyclic_fixed(const FpPoly& v, std::size_t n) const = 0;
  virtual FpPoly cyclic_multiply_prepared(const FpPoly& u, std::size_t n,
                                          const void* prepared) const = 0;
};

/// Oracle-grade multiplier: schoolbook everywhere.
class NaiveMultiplier final : public PolyMultiplier {
 public:
  FpPoly multiply(const FpPoly& a, const FpPoly& b) const override { return poly_mul_naive(a, b); }
  FpPoly cyclic_multiply(const FpPoly& a, const FpPoly& b, std::size_t n) const override {
    return poly_cyclic_naive(a, b, n);
  }
  std::shared_ptr<const void> prepare_cyclic_fixed(const FpPoly& v, std::size_t n) const override;
  FpPoly cyclic_multiply_prepared(const FpPoly& u, std::size_t n,
                                  const void* prepared) const override;
};

/// Base multiplier: every product goes through integer packing. Used
/// standalone and as the recursion floor of the top-level multiplier.
class KsBaseMultiplier final : public PolyMultiplier {
 public:
  FpPoly multiply(const FpPoly& a, const FpPoly& b) const override;
  FpPoly cyclic_multiply(const FpPoly& a, const FpPoly& b, std::size_t n) const override;
  std::shared_ptr<const void> prepare_cyclic_fixed(const FpPoly& v, std::size_t n) const override;
  FpPoly cyclic_multiply_prepared(const FpPoly& u, std::size_t n,
                                  const void* prepared) const override;
};

/// Coefficients packed into byte-aligned bit slots of one big integer.
struct PackedInteger {
  BigInt value;
  unsigned slot_bits = 0;
  std::size_t slots = 0;
};

// Slot width that keeps product coefficients unpack-safe for operands of
// length up to n: 2*lg(p) + lg(n), rounded up to a byte multiple.
unsigned ks_slot_bits(const PrimeContext& ctx, std::size_t n);

PackedInteger ks_pack(const FpPoly& a, unsigned slot_bits);
// Reads `slots` slots and reduces each mod p.
FpPoly ks_unpack(const CtxPtr& ctx, const BigInt& value, unsigned slot_bits, std::size_t slots);

// Product via integer packing; exact for any operand lengths.
FpPoly ks_multiply(const FpPoly& a, const FpPoly& b);

/// Polynomial in X and Z: x_coeffs[i] is the Z-polynomial multiplying X^i.
struct BivariatePoly {
  std::vector<FpPoly> x_coeffs;

  std::size_t x_length() const { return x_coeffs.size(); }
};

// C(X, Z) = A * B recovered from the univariate product at X -> Y^(2*kappa),
// Z -> Y. Requires deg_Z < kappa on both operands.
BivariatePoly ks_bivariate_multiply(const BivariatePoly& a, const BivariatePoly& b,
                                    std::size_t kappa, const PolyMultiplier& mul);

// Product in F_p[X, Z] / (X^n - 1), via a univariate cyclic product of
// length 2*n*kappa.
BivariatePoly ks_cyclic_multiply(const BivariatePoly& a, const BivariatePoly& b, std::size_t n,
                                 std::size_t kappa, const PolyMultiplier& mul);

// The univariate images used by ks_cyclic_multiply, exposed so callers can
// cache the fixed operand of a repeated cyclic product.
FpPoly ks_bivariate_pack(const BivariatePoly& a, const CtxPtr& ctx, std::size_t x_len,
                         std::size_t kappa);
BivariatePoly ks_bivariate_unpack(const FpPoly& c, std::size_t kappa, std::size_t x_len);

}  // namespace fpmul

#endif  // FPMUL_KRONECKER_HPP
