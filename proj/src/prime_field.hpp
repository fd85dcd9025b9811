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

#ifndef FPMUL_PRIME_FIELD_HPP
#define FPMUL_PRIME_FIELD_HPP

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "bigint.hpp"
#include "error.hpp"

namespace fpmul {

/// A prime modulus p with its reduction helpers. Residues are always kept
/// canonical in [0, p). Primes up to 64 bits use plain machine arithmetic;
/// larger primes store residues as fixed-width limb blocks and reduce
/// through BigInt. Contexts are immutable and safe to share.
class PrimeContext {
 public:
  // Verifies primality (Miller-Rabin, deterministic for 64-bit inputs).
  static std::shared_ptr<const PrimeContext> create(BigInt p);
  static std::shared_ptr<const PrimeContext> create_u64(u64 p) { return create(BigInt(p)); }

  const BigInt& modulus() const { return p_; }
  bool single_word() const { return limbs_ == 1; }
  u64 p64() const { return p64_; }
  unsigned limbs() const { return limbs_; }
  // ceil(log2 p).
  unsigned lg_p() const { return lg_p_; }

  bool same_prime(const PrimeContext& other) const { return p_ == other.p_; }

  // --- single-word scalar ops (require single_word()) ---
  u64 add(u64 a, u64 b) const {
    u64 s = a + b;
    if (s < a || s >= p64_) s -= p64_;
    return s;
  }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + (p64_ - b); }
  u64 neg(u64 a) const { return a == 0 ? 0 : p64_ - a; }
  u64 mul(u64 a, u64 b) const { return static_cast<u64>(static_cast<u128>(a) * b % p64_); }
  u64 reduce(u64 x) const { return x % p64_; }
  u64 reduce128(u128 x) const { return static_cast<u64>(x % p64_); }
  u64 inv(u64 a) const;  // throws kNoInverse for a = 0
  u64 pow(u64 base, u64 exp) const;
  u64 pow(u64 base, const BigInt& exp) const;

  // --- generic residue ops on limb blocks of limbs() words ---
  BigInt r_get(std::span<const u64> r) const;
  void r_set(std::span<u64> out, const BigInt& v) const;  // v must be < p
  void r_set_reduce(std::span<u64> out, const BigInt& v) const;
  void r_add(std::span<const u64> a, std::span<const u64> b, std::span<u64> out) const;
  void r_sub(std::span<const u64> a, std::span<const u64> b, std::span<u64> out) const;
  void r_mul(std::span<const u64> a, std::span<const u64> b, std::span<u64> out) const;
  void r_inv(std::span<const u64> a, std::span<u64> out) const;
  bool r_is_zero(std::span<const u64> r) const;

 private:
  explicit PrimeContext(BigInt p);

  BigInt p_;
  u64 p64_ = 0;  // valid when limbs_ == 1
  unsigned limbs_ = 1;
  unsigned lg_p_ = 1;
};

using CtxPtr = std::shared_ptr<const PrimeContext>;

/// Dense polynomial over F_p: index i holds the coefficient of X^i, all
/// coefficients canonical. Length may include trailing zeros; the semantic
/// degree is the largest nonzero index.
class FpPoly {
 public:
  FpPoly() = default;

  static FpPoly zeros(CtxPtr ctx, std::size_t n);
  // Values are reduced mod p.
  static FpPoly from_u64(CtxPtr ctx, std::span<const u64> coeffs);
  static FpPoly from_u64(CtxPtr ctx, std::initializer_list<u64> coeffs) {
    return from_u64(std::move(ctx), std::span<const u64>(coeffs.begin(), coeffs.size()));
  }
  static FpPoly constant(CtxPtr ctx, u64 value);
  static FpPoly one(CtxPtr ctx) { return constant(std::move(ctx), 1); }

  const CtxPtr& context() const { return ctx_; }
  std::size_t length() const { return n_; }
  bool is_zero() const;
  // Largest nonzero index, or nullopt for the zero polynomial.
  std::optional<std::size_t> degree() const;

  u64 get64(std::size_t i) const {
    return i < n_ ? w_[i] : 0;  // single-word contexts only
  }
  void set64(std::size_t i, u64 canonical) { w_[i] = canonical; }
  BigInt get_big(std::size_t i) const;
  void set_big(std::size_t i, const BigInt& v);

  std::span<const u64> raw() const { return w_; }
  std::span<u64> raw_mut() { return w_; }
  std::span<const u64> coeff_span(std::size_t i) const {
    unsigned L = ctx_->limbs();
    return std::span<const u64>(w_).subspan(i * L, L);
  }
  std::span<u64> coeff_span_mut(std::size_t i) {
    unsigned L = ctx_->limbs();
    return std::span<u64>(w_).subspan(i * L, L);
  }

  // Copy with the given length (truncating or zero-padding).
  FpPoly resized(std::size_t n) const;
  // Copy with trailing zeros removed.
  FpPoly trimmed() const;

  // Semantic equality: trailing zeros are ignored, moduli must match.
  friend bool operator==(const FpPoly& a, const FpPoly& b);
  friend bool operator!=(const FpPoly& a, const FpPoly& b) { return !(a == b); }

 private:
  CtxPtr ctx_;
  std::vector<u64> w_;  // n_ * limbs words
  std::size_t n_ = 0;
};

// Throws kContextMismatch unless both polynomials share one modulus.
void require_same_context(const FpPoly& a, const FpPoly& b);

u64 fp_inv(u64 a, const PrimeContext& ctx);

FpPoly poly_add(const FpPoly& a, const FpPoly& b);
FpPoly poly_sub(const FpPoly& a, const FpPoly& b);

// Schoolbook product of length deg a + deg b + 1; the oracle everything
// else is tested against.
FpPoly poly_mul_naive(const FpPoly& a, const FpPoly& b);

// a * b mod X^n - 1, length exactly n. n = 0 is a parameter error.
FpPoly poly_cyclic_naive(const FpPoly& a, const FpPoly& b, std::size_t n);

// Fold a plain product into X^n - 1 (adds coefficient i into i mod n).
FpPoly poly_fold_cyclic(const FpPoly& a, std::size_t n);

// Long division by a monic divisor: a = q * d + r with deg r < deg d.
std::pair<FpPoly, FpPoly> poly_divmod_monic(const FpPoly& a, const FpPoly& d);

}  // namespace fpmul

#endif  // FPMUL_PRIME_FIELD_HPP
