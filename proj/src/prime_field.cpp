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

#include "prime_field.hpp"

#include <algorithm>
#include <cassert>

namespace fpmul {

PrimeContext::PrimeContext(BigInt p) : p_(std::move(p)) {
  BigInt pm1 = BigInt::sub_u64(p_, 1);
  lg_p_ = static_cast<unsigned>(std::max<std::size_t>(1, pm1.bit_length()));
  limbs_ = static_cast<unsigned>(std::max<std::size_t>(1, (pm1.bit_length() + 63) / 64));
  if (limbs_ == 1) p64_ = p_.to_u64();
}

std::shared_ptr<const PrimeContext> PrimeContext::create(BigInt p) {
  if (!is_prime(p)) raise(ErrorCode::kNotPrime, "modulus " + p.to_decimal() + " is not prime");
  return std::shared_ptr<const PrimeContext>(new PrimeContext(std::move(p)));
}

u64 PrimeContext::inv(u64 a) const {
  if (a == 0) raise(ErrorCode::kNoInverse, "zero has no inverse");
  using i128 = __int128;
  i128 t0 = 0, t1 = 1;
  u64 r0 = p64_, r1 = a;
  while (r1 != 0) {
    u64 q = r0 / r1;
    i128 t2 = t0 - static_cast<i128>(q) * t1;
    t0 = t1;
    t1 = t2;
    u64 r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
  }
  assert(r0 == 1);  // a < p and p prime
  if (t0 < 0) t0 += static_cast<i128>(p64_);
  return static_cast<u64>(t0);
}

u64 PrimeContext::pow(u64 base, u64 exp) const {
  u64 result = 1 % p64_;
  base %= p64_;
  while (exp != 0) {
    if (exp & 1u) result = mul(result, base);
    base = mul(base, base);
    exp >>= 1;
  }
  return result;
}

u64 PrimeContext::pow(u64 base, const BigInt& exp) const {
  u64 result = 1 % p64_;
  base %= p64_;
  for (std::size_t i = exp.bit_length(); i-- > 0;) {
    result = mul(result, result);
    if (exp.bit(i)) result = mul(result, base);
  }
  return result;
}

BigInt PrimeContext::r_get(std::span<const u64> r) const {
  return BigInt::from_words(std::vector<u64>(r.begin(), r.end()));
}

void PrimeContext::r_set(std::span<u64> out, const BigInt& v) const {
  assert(v < p_);
  auto words = v.words();
  for (unsigned i = 0; i < limbs_; ++i) out[i] = i < words.size() ? words[i] : 0;
}

void PrimeContext::r_set_reduce(std::span<u64> out, const BigInt& v) const {
  r_set(out, v % p_);
}

void PrimeContext::r_add(std::span<const u64> a, std::span<const u64> b, std::span<u64> out) const {
  if (single_word()) {
    out[0] = add(a[0], b[0]);
    return;
  }
  BigInt s = r_get(a) + r_get(b);
  if (s >= p_) s -= p_;
  r_set(out, s);
}

void PrimeContext::r_sub(std::span<const u64> a, std::span<const u64> b, std::span<u64> out) const {
  if (single_word()) {
    out[0] = sub(a[0], b[0]);
    return;
  }
  BigInt av = r_get(a), bv = r_get(b);
  r_set(out, av >= bv ? av - bv : av + p_ - bv);
}

void PrimeContext::r_mul(std::span<const u64> a, std::span<const u64> b, std::span<u64> out) const {
  if (single_word()) {
    out[0] = mul(a[0], b[0]);
    return;
  }
  r_set(out, (r_get(a) * r_get(b)) % p_);
}

void PrimeContext::r_inv(std::span<const u64> a, std::span<u64> out) const {
  if (single_word()) {
    out[0] = inv(a[0]);
    return;
  }
  BigInt av = r_get(a);
  if (av.is_zero()) raise(ErrorCode::kNoInverse, "zero has no inverse");
  // Extended Euclid with explicit signs for the Bezout coefficient of a.
  BigInt r0 = p_, r1 = av;
  BigInt t0, t1(1);
  bool neg0 = false, neg1 = false;
  while (!r1.is_zero()) {
    auto [q, r2] = BigInt::divmod(r0, r1);
    // t2 = t0 - q * t1 in signed arithmetic.
    BigInt qt1 = q * t1;
    BigInt t2;
    bool neg2;
    if (neg0 == neg1) {
      if (t0 >= qt1) {
        t2 = t0 - qt1;
        neg2 = neg0;
      } else {
        t2 = qt1 - t0;
        neg2 = !neg0;
      }
    } else {
      t2 = t0 + qt1;
      neg2 = neg0;
    }
    t0 = std::move(t1);
    neg0 = neg1;
    t1 = std::move(t2);
    neg1 = neg2;
    r0 = std::move(r1);
    r1 = std::move(r2);
  }
  assert(r0.is_one());
  BigInt result = neg0 ? p_ - (t0 % p_) : t0 % p_;
  if (result == p_) result = BigInt();
  r_set(out, result);
}

bool PrimeContext::r_is_zero(std::span<const u64> r) const {
  return std::all_of(r.begin(), r.end(), [](u64 w) { return w == 0; });
}

u64 fp_inv(u64 a, const PrimeContext& ctx) { return ctx.inv(a); }

// ---------------------------------------------------------------------------
// FpPoly
// ---------------------------------------------------------------------------

FpPoly FpPoly::zeros(CtxPtr ctx, std::size_t n) {
  FpPoly p;
  p.n_ = n;
  p.w_.assign(n * ctx->limbs(), 0);
  p.ctx_ = std::move(ctx);
  return p;
}

FpPoly FpPoly::from_u64(CtxPtr ctx, std::span<const u64> coeffs) {
  FpPoly p = zeros(ctx, coeffs.size());
  if (ctx->single_word()) {
    for (std::size_t i = 0; i < coeffs.size(); ++i) p.w_[i] = ctx->reduce(coeffs[i]);
  } else {
    for (std::size_t i = 0; i < coeffs.size(); ++i) p.w_[i * ctx->limbs()] = coeffs[i];
  }
  return p;
}

FpPoly FpPoly::constant(CtxPtr ctx, u64 value) {
  u64 v[1] = {value};
  return from_u64(std::move(ctx), std::span<const u64>(v, 1));
}

bool FpPoly::is_zero() const {
  return std::all_of(w_.begin(), w_.end(), [](u64 w) { return w == 0; });
}

std::optional<std::size_t> FpPoly::degree() const {
  unsigned L = ctx_ ? ctx_->limbs() : 1;
  for (std::size_t i = n_; i-- > 0;) {
    for (unsigned j = 0; j < L; ++j) {
      if (w_[i * L + j] != 0) return i;
    }
  }
  return std::nullopt;
}

BigInt FpPoly::get_big(std::size_t i) const {
  if (i >= n_) return BigInt();
  return ctx_->r_get(coeff_span(i));
}

void FpPoly::set_big(std::size_t i, const BigInt& v) { ctx_->r_set_reduce(coeff_span_mut(i), v); }

FpPoly FpPoly::resized(std::size_t n) const {
  FpPoly p = zeros(ctx_, n);
  unsigned L = ctx_->limbs();
  std::size_t keep = std::min(n, n_) * L;
  std::copy(w_.begin(), w_.begin() + static_cast<std::ptrdiff_t>(keep), p.w_.begin());
  return p;
}

FpPoly FpPoly::trimmed() const {
  auto d = degree();
  return resized(d ? *d + 1 : 0);
}

bool operator==(const FpPoly& a, const FpPoly& b) {
  if (!a.ctx_ || !b.ctx_) return !a.ctx_ && !b.ctx_;
  if (!a.ctx_->same_prime(*b.ctx_)) return false;
  unsigned L = a.ctx_->limbs();
  std::size_t n = std::max(a.n_, b.n_);
  for (std::size_t i = 0; i < n * L; ++i) {
    u64 av = i < a.w_.size() ? a.w_[i] : 0;
    u64 bv = i < b.w_.size() ? b.w_[i] : 0;
    if (av != bv) return false;
  }
  return true;
}

void require_same_context(const FpPoly& a, const FpPoly& b) {
  if (!a.context() || !b.context() || !a.context()->same_prime(*b.context())) {
    raise(ErrorCode::kContextMismatch, "operands use different moduli");
  }
}

FpPoly poly_add(const FpPoly& a, const FpPoly& b) {
  require_same_context(a, b);
  const auto& ctx = *a.context();
  std::size_t n = std::max(a.length(), b.length());
  FpPoly out = FpPoly::zeros(a.context(), n);
  if (ctx.single_word()) {
    for (std::size_t i = 0; i < n; ++i) out.set64(i, ctx.add(a.get64(i), b.get64(i)));
  } else {
    FpPoly ax = a.resized(n), bx = b.resized(n);
    for (std::size_t i = 0; i < n; ++i) {
      ctx.r_add(ax.coeff_span(i), bx.coeff_span(i), out.coeff_span_mut(i));
    }
  }
  return out;
}

FpPoly poly_sub(const FpPoly& a, const FpPoly& b) {
  require_same_context(a, b);
  const auto& ctx = *a.context();
  std::size_t n = std::max(a.length(), b.length());
  FpPoly out = FpPoly::zeros(a.context(), n);
  if (ctx.single_word()) {
    for (std::size_t i = 0; i < n; ++i) out.set64(i, ctx.sub(a.get64(i), b.get64(i)));
  } else {
    FpPoly ax = a.resized(n), bx = b.resized(n);
    for (std::size_t i = 0; i < n; ++i) {
      ctx.r_sub(ax.coeff_span(i), bx.coeff_span(i), out.coeff_span_mut(i));
    }
  }
  return out;
}

FpPoly poly_mul_naive(const FpPoly& a, const FpPoly& b) {
  require_same_context(a, b);
  const auto& ctx = *a.context();
  auto da = a.degree(), db = b.degree();
  if (!da || !db) return FpPoly::zeros(a.context(), 0);
  std::size_t la = *da + 1, lb = *db + 1;
  FpPoly out = FpPoly::zeros(a.context(), la + lb - 1);
  if (ctx.single_word() && ctx.lg_p() <= 32) {
    // Products fit in 64 bits, so whole convolution sums fit in 128.
    for (std::size_t k = 0; k < la + lb - 1; ++k) {
      u128 acc = 0;
      std::size_t lo = k >= lb ? k - lb + 1 : 0;
      std::size_t hi = std::min(k, la - 1);
      for (std::size_t i = lo; i <= hi; ++i) {
        acc += static_cast<u128>(a.get64(i)) * b.get64(k - i);
      }
      out.set64(k, ctx.reduce128(acc));
    }
  } else if (ctx.single_word()) {
    for (std::size_t i = 0; i < la; ++i) {
      u64 ai = a.get64(i);
      if (ai == 0) continue;
      for (std::size_t j = 0; j < lb; ++j) {
        out.set64(i + j, ctx.add(out.get64(i + j), ctx.mul(ai, b.get64(j))));
      }
    }
  } else {
    std::vector<u64> tmp(ctx.limbs());
    for (std::size_t i = 0; i < la; ++i) {
      if (ctx.r_is_zero(a.coeff_span(i))) continue;
      for (std::size_t j = 0; j < lb; ++j) {
        ctx.r_mul(a.coeff_span(i), b.coeff_span(j), tmp);
        ctx.r_add(out.coeff_span(i + j), tmp, out.coeff_span_mut(i + j));
      }
    }
  }
  return out;
}

FpPoly poly_fold_cyclic(const FpPoly& a, std::size_t n) {
  if (n == 0) raise(ErrorCode::kParameter, "cyclic length must be positive");
  const auto& ctx = *a.context();
  FpPoly out = FpPoly::zeros(a.context(), n);
  if (ctx.single_word()) {
    for (std::size_t i = 0; i < a.length(); ++i) {
      std::size_t k = i % n;
      out.set64(k, ctx.add(out.get64(k), a.get64(i)));
    }
  } else {
    for (std::size_t i = 0; i < a.length(); ++i) {
      std::size_t k = i % n;
      ctx.r_add(out.coeff_span(k), a.coeff_span(i), out.coeff_span_mut(k));
    }
  }
  return out;
}

FpPoly poly_cyclic_naive(const FpPoly& a, const FpPoly& b, std::size_t n) {
  require_same_context(a, b);
  if (n == 0) raise(ErrorCode::kParameter, "cyclic length must be positive");
  if (a.length() > n || b.length() > n) {
    raise(ErrorCode::kLengthMismatch, "cyclic operands longer than n");
  }
  return poly_fold_cyclic(poly_mul_naive(a, b), n);
}

std::pair<FpPoly, FpPoly> poly_divmod_monic(const FpPoly& a, const FpPoly& d) {
  require_same_context(a, d);
  const auto& ctx = *a.context();
  auto dd = d.degree();
  if (!dd) raise(ErrorCode::kParameter, "division by zero polynomial");
  std::size_t m = *dd;
  if (!ctx.single_word()) raise(ErrorCode::kUnsupported, "poly division needs single-word modulus");
  if (d.get64(m) != 1) raise(ErrorCode::kParameter, "divisor must be monic");

  FpPoly rem = a.trimmed();
  auto ra = rem.degree();
  if (!ra || *ra < m) return {FpPoly::zeros(a.context(), 0), rem};
  FpPoly q = FpPoly::zeros(a.context(), *ra - m + 1);
  std::vector<u64> r(rem.length());
  for (std::size_t i = 0; i < rem.length(); ++i) r[i] = rem.get64(i);
  for (std::size_t k = *ra + 1; k-- > m;) {
    u64 c = r[k];
    if (c == 0) continue;
    q.set64(k - m, c);
    for (std::size_t j = 0; j <= m; ++j) {
      r[k - m + j] = ctx.sub(r[k - m + j], ctx.mul(c, d.get64(j)));
    }
  }
  FpPoly rp = FpPoly::from_u64(a.context(), std::span<const u64>(r.data(), m));
  return {std::move(q), rp.trimmed()};
}

}  // namespace fpmul
