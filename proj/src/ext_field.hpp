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

#ifndef FPMUL_EXT_FIELD_HPP
#define FPMUL_EXT_FIELD_HPP

#include <memory>
#include <span>
#include <vector>

#include "kronecker.hpp"
#include "prime_field.hpp"

namespace fpmul {

class ExtField;
using FieldPtr = std::shared_ptr<const ExtField>;

/// F_{p^kappa} = F_p[Z]/P for a monic irreducible P, with a precomputed
/// Newton inverse of the reversed modulus so reductions cost two short
/// multiplications. Elements are residues of degree < kappa, stored as
/// kappa consecutive words. Only single-word prime contexts are supported;
/// the planner never reaches extension arithmetic for wider primes.
class ExtField {
 public:
  // Verifies irreducibility (Frobenius-power test); throws kParameter if not.
  static FieldPtr create(CtxPtr ctx, FpPoly modulus);
  // Seeded random search for an irreducible monic modulus of degree kappa.
  static FieldPtr find_irreducible(CtxPtr ctx, std::size_t kappa, u64 seed);

  const CtxPtr& context() const { return ctx_; }
  std::size_t kappa() const { return kappa_; }
  const FpPoly& modulus() const { return modulus_; }
  const BigInt& order_minus_one() const { return order_m1_; }  // p^kappa - 1

  bool same_field(const ExtField& other) const {
    return ctx_->same_prime(*other.ctx_) && modulus_ == other.modulus_;
  }

  // --- element operations on spans of kappa words ---
  void set_zero(std::span<u64> out) const;
  void set_one(std::span<u64> out) const;
  void set_z(std::span<u64> out) const;  // the residue Z (reduced if kappa == 1)
  void set_scalar(std::span<u64> out, u64 value) const;
  bool is_zero(std::span<const u64> a) const;
  bool is_one(std::span<const u64> a) const;
  bool equal(std::span<const u64> a, std::span<const u64> b) const;

  void add(std::span<const u64> a, std::span<const u64> b, std::span<u64> out) const;
  void sub(std::span<const u64> a, std::span<const u64> b, std::span<u64> out) const;
  void scalar_mul(std::span<const u64> a, u64 s, std::span<u64> out) const;
  void mul(std::span<const u64> a, std::span<const u64> b, std::span<u64> out) const;
  void pow(std::span<const u64> base, const BigInt& exp, std::span<u64> out) const;
  void pow_u64(std::span<const u64> base, u64 exp, std::span<u64> out) const;
  void inv(std::span<const u64> a, std::span<u64> out) const;  // a != 0

  FpPoly to_poly(std::span<const u64> a) const;
  void from_poly(const FpPoly& f, std::span<u64> out) const;  // deg f < kappa

  // f = q*P + r with deg r < kappa, for deg f < 2*kappa.
  std::pair<FpPoly, FpPoly> div_rem(const FpPoly& f) const;

  // Reduce a raw product of 2*kappa words (degree <= 2*kappa - 2) into an
  // element; the workhorse behind mul().
  void reduce_product(std::span<const u64> prod, std::span<u64> out) const;

 private:
  ExtField(CtxPtr ctx, FpPoly modulus, FpPoly rev_inv);

  CtxPtr ctx_;
  FpPoly modulus_;
  FpPoly rev_inv_;  // inverse of rev(P) mod X^kappa
  std::size_t kappa_ = 0;
  BigInt order_m1_;
};

/// Flat sequence of extension elements (stride = kappa words).
struct ExtVec {
  std::size_t len = 0;
  std::size_t kappa = 0;
  std::vector<u64> w;

  static ExtVec zeros(std::size_t len, std::size_t kappa) {
    ExtVec v;
    v.len = len;
    v.kappa = kappa;
    v.w.assign(len * kappa, 0);
    return v;
  }
  std::span<u64> elem(std::size_t i) { return std::span<u64>(w).subspan(i * kappa, kappa); }
  std::span<const u64> elem(std::size_t i) const {
    return std::span<const u64>(w).subspan(i * kappa, kappa);
  }
};

/// Owning single element with its field, for plan data and public surfaces.
struct ExtElement {
  FieldPtr field;
  std::vector<u64> r;

  static ExtElement zero(FieldPtr f);
  static ExtElement one(FieldPtr f);
  static ExtElement z(FieldPtr f);
  static ExtElement from_poly(FieldPtr f, const FpPoly& poly);
  std::span<const u64> span() const { return r; }
  std::span<u64> span_mut() { return r; }
};

ExtElement ext_mul(const ExtElement& x, const ExtElement& y);
ExtElement ext_pow(const ExtElement& x, const BigInt& e);
ExtElement ext_pow(const ExtElement& x, u64 e);
ExtElement ext_inv(const ExtElement& x);
bool ext_equal(const ExtElement& x, const ExtElement& y);

// Monic irreducibility test used by field construction (and directly by
// tests): P must be monic of degree >= 1.
bool is_irreducible(const CtxPtr& ctx, const FpPoly& candidate);

// Primitive N-th root of unity: w^N = 1 and w^{N/s} != 1 for every prime
// s | N. n_primes must hold the distinct primes of N. Seeded random search
// with deterministic verification.
ExtElement find_root_of_order(const FieldPtr& field, u64 n, std::span<const u64> n_primes,
                              u64 seed);

// Polynomials over the extension, multiplied through the bivariate
// substitution and the supplied univariate multiplier.
ExtVec ext_poly_multiply(const FieldPtr& field, const ExtVec& a, const ExtVec& b,
                         const PolyMultiplier& mul);

// Cyclic product of length n over the extension. `prepared` may hold the
// multiplier's cached data for b's univariate image (see
// ext_cyclic_prepare); pass nullptr when unavailable.
ExtVec ext_cyclic_multiply(const FieldPtr& field, const ExtVec& a, const ExtVec& b, std::size_t n,
                           const PolyMultiplier& mul, const void* prepared = nullptr);
std::shared_ptr<const void> ext_cyclic_prepare(const FieldPtr& field, const ExtVec& b,
                                               std::size_t n, const PolyMultiplier& mul);

// O(n^2) oracle.
ExtVec ext_cyclic_naive(const FieldPtr& field, const ExtVec& a, const ExtVec& b, std::size_t n);

}  // namespace fpmul

#endif  // FPMUL_EXT_FIELD_HPP
