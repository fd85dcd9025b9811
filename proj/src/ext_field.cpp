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

#include "ext_field.hpp"

#include <algorithm>
#include <cassert>
#include <random>

namespace fpmul {

namespace {

// Below this degree, products and reductions stay schoolbook; above it the
// integer-packing route wins.
constexpr std::size_t kSchoolbookKappa = 32;

FpPoly reverse_poly(const FpPoly& f, std::size_t top_degree) {
  const CtxPtr& ctx = f.context();
  FpPoly out = FpPoly::zeros(ctx, top_degree + 1);
  unsigned L = ctx->limbs();
  for (std::size_t i = 0; i <= top_degree; ++i) {
    if (i >= f.length()) continue;
    auto src = f.coeff_span(i);
    auto dst = out.coeff_span_mut(top_degree - i);
    std::copy(src.begin(), src.end(), dst.begin());
  }
  (void)L;
  return out;
}

FpPoly mul_trunc(const FpPoly& a, const FpPoly& b, std::size_t n) {
  FpPoly full = a.length() < kSchoolbookKappa && b.length() < kSchoolbookKappa
                    ? poly_mul_naive(a, b)
                    : ks_multiply(a, b);
  return full.resized(n);
}

// Inverse of rev(P) mod X^kappa by Newton iteration; P must be monic.
FpPoly newton_rev_inverse(const CtxPtr& ctx, const FpPoly& P, std::size_t kappa) {
  FpPoly g = reverse_poly(P, kappa).resized(kappa);  // rev(P) mod X^kappa
  FpPoly inv = FpPoly::one(ctx);
  std::size_t t = 1;
  while (t < kappa) {
    std::size_t t2 = std::min(2 * t, kappa);
    // inv <- inv * (2 - g * inv) mod X^t2
    FpPoly gi = mul_trunc(g.resized(t2), inv, t2);
    FpPoly two_minus = poly_sub(FpPoly::constant(ctx, 2 % ctx->p64()), gi);
    inv = mul_trunc(inv, two_minus, t2);
    t = t2;
  }
  return inv;
}

FpPoly span_to_poly(const CtxPtr& ctx, std::span<const u64> a) {
  FpPoly f = FpPoly::zeros(ctx, a.size());
  std::copy(a.begin(), a.end(), f.raw_mut().begin());
  return f;
}

}  // namespace

ExtField::ExtField(CtxPtr ctx, FpPoly modulus, FpPoly rev_inv)
    : ctx_(std::move(ctx)), modulus_(std::move(modulus)), rev_inv_(std::move(rev_inv)) {
  kappa_ = *modulus_.degree();
  order_m1_ = BigInt::pow(ctx_->modulus(), kappa_) - BigInt(1);
}

FieldPtr ExtField::create(CtxPtr ctx, FpPoly modulus) {
  if (!ctx->single_word()) {
    raise(ErrorCode::kUnsupported, "extension fields need a single-word prime");
  }
  modulus = modulus.trimmed();
  auto deg = modulus.degree();
  if (!deg || *deg < 1) raise(ErrorCode::kParameter, "modulus must have degree >= 1");
  if (modulus.get64(*deg) != 1) raise(ErrorCode::kParameter, "modulus must be monic");
  if (!is_irreducible(ctx, modulus)) {
    raise(ErrorCode::kParameter, "modulus is not irreducible");
  }
  FpPoly rev_inv = newton_rev_inverse(ctx, modulus, *deg);
  return FieldPtr(new ExtField(std::move(ctx), std::move(modulus), std::move(rev_inv)));
}

FieldPtr ExtField::find_irreducible(CtxPtr ctx, std::size_t kappa, u64 seed) {
  if (kappa < 1) raise(ErrorCode::kParameter, "kappa must be >= 1");
  if (!ctx->single_word()) {
    raise(ErrorCode::kUnsupported, "extension fields need a single-word prime");
  }
  std::mt19937_64 rng(seed);
  u64 p = ctx->p64();
  if (kappa == 1) {
    FpPoly lin = FpPoly::zeros(ctx, 2);
    lin.set64(0, ctx->reduce(rng()));
    lin.set64(1, 1);
    return create(std::move(ctx), lin);
  }
  (void)p;
  u64 cap = 64 * static_cast<u64>(kappa) + 64;
  for (u64 trial = 0; trial < cap; ++trial) {
    FpPoly cand = FpPoly::zeros(ctx, kappa + 1);
    for (std::size_t i = 0; i < kappa; ++i) cand.set64(i, ctx->reduce(rng()));
    if (cand.get64(0) == 0) cand.set64(0, 1);  // rule out the factor Z
    cand.set64(kappa, 1);
    if (is_irreducible(ctx, cand)) return create(ctx, cand);
  }
  raise(ErrorCode::kSearchExhausted, "no irreducible modulus found within the trial cap");
}

void ExtField::set_zero(std::span<u64> out) const { std::fill(out.begin(), out.end(), 0); }

void ExtField::set_one(std::span<u64> out) const {
  set_zero(out);
  out[0] = 1 % ctx_->p64();
}

void ExtField::set_z(std::span<u64> out) const {
  set_zero(out);
  if (kappa_ == 1) {
    // Z reduces to the negated constant term of the linear modulus.
    out[0] = ctx_->neg(modulus_.get64(0));
  } else {
    out[1] = 1;
  }
}

void ExtField::set_scalar(std::span<u64> out, u64 value) const {
  set_zero(out);
  out[0] = ctx_->reduce(value);
}

bool ExtField::is_zero(std::span<const u64> a) const {
  return std::all_of(a.begin(), a.end(), [](u64 w) { return w == 0; });
}

bool ExtField::is_one(std::span<const u64> a) const {
  if (a[0] != 1 % ctx_->p64()) return false;
  return std::all_of(a.begin() + 1, a.end(), [](u64 w) { return w == 0; });
}

bool ExtField::equal(std::span<const u64> a, std::span<const u64> b) const {
  return std::equal(a.begin(), a.end(), b.begin());
}

void ExtField::add(std::span<const u64> a, std::span<const u64> b, std::span<u64> out) const {
  for (std::size_t i = 0; i < kappa_; ++i) out[i] = ctx_->add(a[i], b[i]);
}

void ExtField::sub(std::span<const u64> a, std::span<const u64> b, std::span<u64> out) const {
  for (std::size_t i = 0; i < kappa_; ++i) out[i] = ctx_->sub(a[i], b[i]);
}

void ExtField::scalar_mul(std::span<const u64> a, u64 s, std::span<u64> out) const {
  for (std::size_t i = 0; i < kappa_; ++i) out[i] = ctx_->mul(a[i], s);
}

void ExtField::reduce_product(std::span<const u64> prod, std::span<u64> out) const {
  if (kappa_ == 1) {
    // Evaluate at Z = -P[0].
    u64 z = ctx_->neg(modulus_.get64(0));
    u64 acc = prod[0];
    u64 zp = 1 % ctx_->p64();
    for (std::size_t i = 1; i < prod.size(); ++i) {
      zp = ctx_->mul(zp, z);
      acc = ctx_->add(acc, ctx_->mul(prod[i], zp));
    }
    out[0] = acc;
    return;
  }
  if (kappa_ < kSchoolbookKappa) {
    u64 buf[2 * kSchoolbookKappa];
    std::size_t len = prod.size();
    std::copy(prod.begin(), prod.end(), buf);
    for (std::size_t j = len; j-- > kappa_;) {
      u64 c = buf[j];
      if (c == 0) continue;
      buf[j] = 0;
      for (std::size_t i = 0; i < kappa_; ++i) {
        buf[j - kappa_ + i] = ctx_->sub(buf[j - kappa_ + i], ctx_->mul(c, modulus_.get64(i)));
      }
    }
    std::copy(buf, buf + kappa_, out.begin());
    return;
  }
  FpPoly f = span_to_poly(ctx_, prod);
  FpPoly r = div_rem(f).second;
  set_zero(out);
  std::copy(r.raw().begin(), r.raw().end(), out.begin());
}

void ExtField::mul(std::span<const u64> a, std::span<const u64> b, std::span<u64> out) const {
  if (kappa_ == 1) {
    out[0] = ctx_->mul(a[0], b[0]);
    return;
  }
  if (kappa_ < kSchoolbookKappa) {
    u64 buf[2 * kSchoolbookKappa] = {0};
    if (ctx_->lg_p() <= 32) {
      for (std::size_t k = 0; k < 2 * kappa_ - 1; ++k) {
        u128 acc = 0;
        std::size_t lo = k >= kappa_ ? k - kappa_ + 1 : 0;
        std::size_t hi = std::min(k, kappa_ - 1);
        for (std::size_t i = lo; i <= hi; ++i) acc += static_cast<u128>(a[i]) * b[k - i];
        buf[k] = ctx_->reduce128(acc);
      }
    } else {
      for (std::size_t i = 0; i < kappa_; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < kappa_; ++j) {
          buf[i + j] = ctx_->add(buf[i + j], ctx_->mul(a[i], b[j]));
        }
      }
    }
    reduce_product(std::span<const u64>(buf, 2 * kappa_ - 1), out);
    return;
  }
  FpPoly fa = span_to_poly(ctx_, a);
  FpPoly fb = span_to_poly(ctx_, b);
  FpPoly prod = ks_multiply(fa, fb).resized(2 * kappa_ - 1);
  reduce_product(prod.raw(), out);
}

void ExtField::pow(std::span<const u64> base, const BigInt& exp, std::span<u64> out) const {
  std::vector<u64> result(kappa_), b(base.begin(), base.end()), tmp(kappa_);
  set_one(result);
  for (std::size_t i = exp.bit_length(); i-- > 0;) {
    mul(result, result, tmp);
    std::swap(result, tmp);
    if (exp.bit(i)) {
      mul(result, b, tmp);
      std::swap(result, tmp);
    }
  }
  std::copy(result.begin(), result.end(), out.begin());
}

void ExtField::pow_u64(std::span<const u64> base, u64 exp, std::span<u64> out) const {
  pow(base, BigInt(exp), out);
}

void ExtField::inv(std::span<const u64> a, std::span<u64> out) const {
  if (is_zero(a)) raise(ErrorCode::kNoInverse, "zero has no inverse");
  pow(a, order_m1_ - BigInt(1), out);  // a^(p^kappa - 2)
}

FpPoly ExtField::to_poly(std::span<const u64> a) const { return span_to_poly(ctx_, a); }

void ExtField::from_poly(const FpPoly& f, std::span<u64> out) const {
  auto d = f.degree();
  if (d && *d >= kappa_) raise(ErrorCode::kParameter, "residue degree too large");
  set_zero(out);
  std::size_t n = std::min<std::size_t>(f.length(), kappa_);
  for (std::size_t i = 0; i < n; ++i) out[i] = f.get64(i);
}

std::pair<FpPoly, FpPoly> ExtField::div_rem(const FpPoly& f) const {
  auto d = f.degree();
  if (!d || *d < kappa_) return {FpPoly::zeros(ctx_, 0), f.resized(std::min<std::size_t>(f.length(), kappa_))};
  if (*d >= 2 * kappa_) raise(ErrorCode::kParameter, "div_rem input degree must be < 2*kappa");
  // rev(q) = rev(f) * rev_inv mod X^kappa, taking rev at degree 2*kappa-1.
  FpPoly fr = reverse_poly(f.resized(2 * kappa_), 2 * kappa_ - 1);
  FpPoly q_rev = mul_trunc(fr.resized(kappa_), rev_inv_, kappa_);
  FpPoly q = reverse_poly(q_rev.resized(kappa_), kappa_ - 1);
  // r = (f - q*P) truncated to kappa coefficients.
  FpPoly qp = kappa_ < kSchoolbookKappa ? poly_mul_naive(q, modulus_) : ks_multiply(q, modulus_);
  FpPoly r = poly_sub(f.resized(kappa_), qp.resized(kappa_));
  return {q.trimmed(), r};
}

ExtElement ExtElement::zero(FieldPtr f) {
  ExtElement e;
  e.r.assign(f->kappa(), 0);
  e.field = std::move(f);
  return e;
}

ExtElement ExtElement::one(FieldPtr f) {
  ExtElement e = zero(std::move(f));
  e.field->set_one(e.r);
  return e;
}

ExtElement ExtElement::z(FieldPtr f) {
  ExtElement e = zero(std::move(f));
  e.field->set_z(e.r);
  return e;
}

ExtElement ExtElement::from_poly(FieldPtr f, const FpPoly& poly) {
  ExtElement e = zero(std::move(f));
  e.field->from_poly(poly, e.r);
  return e;
}

namespace {
void require_same_field(const ExtElement& x, const ExtElement& y) {
  if (!x.field || !y.field || !x.field->same_field(*y.field)) {
    raise(ErrorCode::kContextMismatch, "elements of different fields");
  }
}
}  // namespace

ExtElement ext_mul(const ExtElement& x, const ExtElement& y) {
  require_same_field(x, y);
  ExtElement out = ExtElement::zero(x.field);
  x.field->mul(x.span(), y.span(), out.span_mut());
  return out;
}

ExtElement ext_pow(const ExtElement& x, const BigInt& e) {
  ExtElement out = ExtElement::zero(x.field);
  x.field->pow(x.span(), e, out.span_mut());
  return out;
}

ExtElement ext_pow(const ExtElement& x, u64 e) { return ext_pow(x, BigInt(e)); }

ExtElement ext_inv(const ExtElement& x) {
  ExtElement out = ExtElement::zero(x.field);
  x.field->inv(x.span(), out.span_mut());
  return out;
}

bool ext_equal(const ExtElement& x, const ExtElement& y) {
  require_same_field(x, y);
  return x.field->equal(x.span(), y.span());
}

// ---------------------------------------------------------------------------
// Irreducibility: P of degree k is irreducible iff X^(p^k) = X mod P and
// gcd(X^(p^(k/q)) - X, P) = 1 for every prime q | k. The Frobenius ladder
// raises to the p-th power once per rung, so the whole test costs
// O(k lg p) ring products.
// ---------------------------------------------------------------------------

namespace {

struct QuotientRing {
  CtxPtr ctx;
  FpPoly P;
  FpPoly rev_inv;
  std::size_t k;

  FpPoly mul(const FpPoly& a, const FpPoly& b) const {
    FpPoly prod = a.length() < kSchoolbookKappa && b.length() < kSchoolbookKappa
                      ? poly_mul_naive(a, b)
                      : ks_multiply(a, b);
    if (auto d = prod.degree(); !d || *d < k) return prod.resized(k);
    // Same Newton reduction as ExtField::div_rem.
    FpPoly fr = reverse_poly(prod.resized(2 * k), 2 * k - 1);
    FpPoly q_rev = mul_trunc(fr.resized(k), rev_inv, k);
    FpPoly q = reverse_poly(q_rev.resized(k), k - 1);
    FpPoly qp = k < kSchoolbookKappa ? poly_mul_naive(q, P) : ks_multiply(q, P);
    return poly_sub(prod.resized(k), qp.resized(k));
  }

  FpPoly pow_u64(FpPoly base, u64 exp) const {
    FpPoly result = FpPoly::one(ctx).resized(k);
    while (exp != 0) {
      if (exp & 1u) result = mul(result, base);
      exp >>= 1;
      if (exp != 0) base = mul(base, base);
    }
    return result;
  }
};

FpPoly poly_gcd(const FpPoly& a, const FpPoly& b) {
  const CtxPtr& ctx = a.context();
  FpPoly x = a.trimmed(), y = b.trimmed();
  while (!y.is_zero()) {
    u64 lead = y.get64(*y.degree());
    FpPoly y_monic = y;
    if (lead != 1) {
      u64 s = ctx->inv(lead);
      for (std::size_t i = 0; i < y_monic.length(); ++i) {
        y_monic.set64(i, ctx->mul(y_monic.get64(i), s));
      }
    }
    FpPoly r = poly_divmod_monic(x, y_monic).second;
    x = std::move(y_monic);
    y = std::move(r);
  }
  return x;
}

}  // namespace

bool is_irreducible(const CtxPtr& ctx, const FpPoly& candidate) {
  FpPoly P = candidate.trimmed();
  auto deg = P.degree();
  if (!deg || *deg < 1) return false;
  std::size_t k = *deg;
  if (P.get64(k) != 1) raise(ErrorCode::kParameter, "irreducibility test needs a monic input");
  if (k == 1) return true;
  if (P.get64(0) == 0) return false;  // divisible by Z

  QuotientRing ring{ctx, P, newton_rev_inverse(ctx, P, k), k};
  // Distinct primes of k, largest proper checkpoints k/q.
  std::vector<std::size_t> checkpoints;
  std::size_t rem = k;
  for (std::size_t q = 2; q * q <= rem; ++q) {
    if (rem % q == 0) {
      checkpoints.push_back(k / q);
      while (rem % q == 0) rem /= q;
    }
  }
  if (rem > 1) checkpoints.push_back(k / rem);
  std::sort(checkpoints.begin(), checkpoints.end());

  FpPoly x = FpPoly::zeros(ctx, k);
  x.set64(1, 1);
  FpPoly cur = x;  // X^(p^0)
  u64 p = ctx->p64();
  std::size_t next_cp = 0;
  for (std::size_t j = 1; j <= k; ++j) {
    cur = ring.pow_u64(cur, p);
    while (next_cp < checkpoints.size() && checkpoints[next_cp] == j) {
      FpPoly diff = poly_sub(cur, x);
      if (diff.is_zero()) return false;  // every factor has degree dividing j
      FpPoly g = poly_gcd(diff, P);
      if (auto gd = g.degree(); gd && *gd > 0) return false;
      ++next_cp;
    }
  }
  return cur == x;  // X^(p^k) = X
}

ExtElement find_root_of_order(const FieldPtr& field, u64 n, std::span<const u64> n_primes,
                              u64 seed) {
  if (n == 0) raise(ErrorCode::kParameter, "order must be positive");
  if (n == 1) return ExtElement::one(field);
  const BigInt& group = field->order_minus_one();
  auto [exp, rem] = group.divmod_u64(n);
  if (rem != 0) {
    raise(ErrorCode::kDivisibility, "order does not divide p^kappa - 1");
  }
  std::mt19937_64 rng(seed);
  const CtxPtr& ctx = field->context();
  std::size_t kappa = field->kappa();
  u64 cap = 64 * static_cast<u64>(kappa) + 64;
  ExtElement alpha = ExtElement::zero(field);
  ExtElement omega = ExtElement::zero(field);
  std::vector<u64> tmp(kappa);
  for (u64 trial = 0; trial < cap; ++trial) {
    for (std::size_t i = 0; i < kappa; ++i) alpha.r[i] = ctx->reduce(rng());
    if (field->is_zero(alpha.r)) continue;
    field->pow(alpha.span(), exp, omega.span_mut());
    if (field->is_zero(omega.r) || field->is_one(omega.r)) continue;
    bool primitive = true;
    for (u64 s : n_primes) {
      field->pow_u64(omega.span(), n / s, tmp);
      if (field->is_one(tmp)) {
        primitive = false;
        break;
      }
    }
    if (!primitive) continue;
    field->pow_u64(omega.span(), n, tmp);
    if (!field->is_one(tmp)) {
      raise(ErrorCode::kInternal, "root verification failed");
    }
    return omega;
  }
  raise(ErrorCode::kSearchExhausted, "no primitive root found within the trial cap");
}

namespace {

BivariatePoly lift_to_bivariate(const FieldPtr& field, const ExtVec& a) {
  BivariatePoly out;
  out.x_coeffs.reserve(a.len);
  for (std::size_t i = 0; i < a.len; ++i) {
    out.x_coeffs.push_back(field->to_poly(a.elem(i)));
  }
  return out;
}

ExtVec reduce_bivariate(const FieldPtr& field, const BivariatePoly& c) {
  ExtVec out = ExtVec::zeros(c.x_length(), field->kappa());
  for (std::size_t i = 0; i < c.x_length(); ++i) {
    const FpPoly& chunk = c.x_coeffs[i];
    if (auto d = chunk.degree(); d && *d >= field->kappa()) {
      FpPoly r = field->div_rem(chunk).second;
      field->from_poly(r, out.elem(i));
    } else {
      field->from_poly(chunk, out.elem(i));
    }
  }
  return out;
}

}  // namespace

ExtVec ext_poly_multiply(const FieldPtr& field, const ExtVec& a, const ExtVec& b,
                         const PolyMultiplier& mul) {
  if (a.len == 0 || b.len == 0) return ExtVec::zeros(0, field->kappa());
  BivariatePoly ba = lift_to_bivariate(field, a);
  BivariatePoly bb = lift_to_bivariate(field, b);
  BivariatePoly c = ks_bivariate_multiply(ba, bb, field->kappa(), mul);
  return reduce_bivariate(field, c);
}

ExtVec ext_cyclic_multiply(const FieldPtr& field, const ExtVec& a, const ExtVec& b, std::size_t n,
                           const PolyMultiplier& mul, const void* prepared) {
  std::size_t kappa = field->kappa();
  const CtxPtr& ctx = field->context();
  BivariatePoly ba = lift_to_bivariate(field, a);
  FpPoly ua = ks_bivariate_pack(ba, ctx, n, kappa);
  FpPoly uc;
  if (prepared != nullptr) {
    uc = mul.cyclic_multiply_prepared(ua, 2 * n * kappa, prepared);
  } else {
    BivariatePoly bb = lift_to_bivariate(field, b);
    FpPoly ub = ks_bivariate_pack(bb, ctx, n, kappa);
    uc = mul.cyclic_multiply(ua, ub, 2 * n * kappa);
  }
  BivariatePoly c = ks_bivariate_unpack(uc, kappa, n);
  return reduce_bivariate(field, c);
}

std::shared_ptr<const void> ext_cyclic_prepare(const FieldPtr& field, const ExtVec& b,
                                               std::size_t n, const PolyMultiplier& mul) {
  BivariatePoly bb = lift_to_bivariate(field, b);
  FpPoly ub = ks_bivariate_pack(bb, field->context(), n, field->kappa());
  return mul.prepare_cyclic_fixed(ub, 2 * n * field->kappa());
}

ExtVec ext_cyclic_naive(const FieldPtr& field, const ExtVec& a, const ExtVec& b, std::size_t n) {
  std::size_t kappa = field->kappa();
  ExtVec out = ExtVec::zeros(n, kappa);
  std::vector<u64> tmp(kappa);
  for (std::size_t i = 0; i < a.len; ++i) {
    if (field->is_zero(a.elem(i))) continue;
    for (std::size_t j = 0; j < b.len; ++j) {
      std::size_t k = (i + j) % n;
      field->mul(a.elem(i), b.elem(j), tmp);
      field->add(out.elem(k), tmp, out.elem(k));
    }
  }
  return out;
}

}  // namespace fpmul
