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

#include "kronecker.hpp"

#include <algorithm>
#include <bit>
#include <cassert>

namespace fpmul {

unsigned ks_slot_bits(const PrimeContext& ctx, std::size_t n) {
  unsigned lg_n = n <= 1 ? 0 : static_cast<unsigned>(std::bit_width(n - 1));
  unsigned bits = 2 * ctx.lg_p() + lg_n;
  return (bits + 7) / 8 * 8;  // byte-aligned slots
}

PackedInteger ks_pack(const FpPoly& a, unsigned slot_bits) {
  assert(slot_bits % 8 == 0);
  std::size_t slot_bytes = slot_bits / 8;
  std::vector<std::uint8_t> bytes(a.length() * slot_bytes, 0);
  const auto& ctx = *a.context();
  if (ctx.single_word()) {
    for (std::size_t i = 0; i < a.length(); ++i) {
      u64 c = a.get64(i);
      for (std::size_t b = 0; b < std::min<std::size_t>(8, slot_bytes); ++b) {
        bytes[i * slot_bytes + b] = static_cast<std::uint8_t>(c >> (8 * b));
      }
    }
  } else {
    for (std::size_t i = 0; i < a.length(); ++i) {
      BigInt c = a.get_big(i);
      std::size_t len = std::min(c.byte_length(), slot_bytes);
      for (std::size_t b = 0; b < len; ++b) bytes[i * slot_bytes + b] = c.byte_at(b);
    }
  }
  return PackedInteger{BigInt::from_bytes(bytes), slot_bits, a.length()};
}

FpPoly ks_unpack(const CtxPtr& ctx, const BigInt& value, unsigned slot_bits, std::size_t slots) {
  assert(slot_bits % 8 == 0);
  std::size_t slot_bytes = slot_bits / 8;
  FpPoly out = FpPoly::zeros(ctx, slots);
  if (ctx->single_word() && slot_bytes <= 16) {
    for (std::size_t i = 0; i < slots; ++i) {
      u128 v = 0;
      for (std::size_t b = slot_bytes; b-- > 0;) {
        v = (v << 8) | value.byte_at(i * slot_bytes + b);
      }
      out.set64(i, ctx->reduce128(v));
    }
  } else {
    std::vector<std::uint8_t> buf(slot_bytes);
    for (std::size_t i = 0; i < slots; ++i) {
      for (std::size_t b = 0; b < slot_bytes; ++b) buf[b] = value.byte_at(i * slot_bytes + b);
      out.set_big(i, BigInt::from_bytes(buf) % ctx->modulus());
    }
  }
  return out;
}

FpPoly ks_multiply(const FpPoly& a, const FpPoly& b) {
  require_same_context(a, b);
  const CtxPtr& ctx = a.context();
  FpPoly at = a.trimmed(), bt = b.trimmed();
  if (at.length() == 0 || bt.length() == 0) return FpPoly::zeros(ctx, 0);
  std::size_t n = std::max(at.length(), bt.length());
  unsigned slot_bits = ks_slot_bits(*ctx, n);
  PackedInteger pa = ks_pack(at, slot_bits);
  PackedInteger pb = ks_pack(bt, slot_bits);
  BigInt product = pa.value * pb.value;
  return ks_unpack(ctx, product, slot_bits, at.length() + bt.length() - 1);
}

FpPoly KsBaseMultiplier::multiply(const FpPoly& a, const FpPoly& b) const {
  return ks_multiply(a, b);
}

FpPoly KsBaseMultiplier::cyclic_multiply(const FpPoly& a, const FpPoly& b, std::size_t n) const {
  if (n == 0) raise(ErrorCode::kParameter, "cyclic length must be positive");
  if (a.length() > n || b.length() > n) {
    raise(ErrorCode::kLengthMismatch, "cyclic operands longer than n");
  }
  return poly_fold_cyclic(ks_multiply(a, b), n);
}

namespace {
struct PreparedNaive {
  FpPoly v;
};
struct PreparedKs {
  PackedInteger packed;  // empty (slots == 0) for a zero operand
};
}  // namespace

std::shared_ptr<const void> NaiveMultiplier::prepare_cyclic_fixed(const FpPoly& v,
                                                                  std::size_t n) const {
  (void)n;
  return std::make_shared<PreparedNaive>(PreparedNaive{v});
}

FpPoly NaiveMultiplier::cyclic_multiply_prepared(const FpPoly& u, std::size_t n,
                                                 const void* prepared) const {
  const auto* prep = static_cast<const PreparedNaive*>(prepared);
  return poly_cyclic_naive(u, prep->v, n);
}

std::shared_ptr<const void> KsBaseMultiplier::prepare_cyclic_fixed(const FpPoly& v,
                                                                   std::size_t n) const {
  auto prep = std::make_shared<PreparedKs>();
  FpPoly vt = v.trimmed();
  if (vt.length() != 0) prep->packed = ks_pack(vt, ks_slot_bits(*v.context(), n));
  return prep;
}

FpPoly KsBaseMultiplier::cyclic_multiply_prepared(const FpPoly& u, std::size_t n,
                                                  const void* prepared) const {
  const auto* prep = static_cast<const PreparedKs*>(prepared);
  FpPoly ut = u.trimmed();
  if (ut.length() == 0 || prep->packed.slots == 0) return FpPoly::zeros(u.context(), n);
  PackedInteger pu = ks_pack(ut, prep->packed.slot_bits);
  BigInt product = pu.value * prep->packed.value;
  FpPoly full =
      ks_unpack(u.context(), product, prep->packed.slot_bits, ut.length() + prep->packed.slots - 1);
  return poly_fold_cyclic(full, n);
}

FpPoly ks_bivariate_pack(const BivariatePoly& a, const CtxPtr& ctx, std::size_t x_len,
                         std::size_t kappa) {
  std::size_t width = 2 * kappa;
  FpPoly out = FpPoly::zeros(ctx, x_len * width);
  unsigned L = ctx->limbs();
  for (std::size_t i = 0; i < a.x_coeffs.size(); ++i) {
    const FpPoly& zi = a.x_coeffs[i];
    assert(zi.length() <= kappa);
    auto src = zi.raw();
    std::copy(src.begin(), src.end(), out.raw_mut().begin() + static_cast<std::ptrdiff_t>(i * width * L));
  }
  return out;
}

BivariatePoly ks_bivariate_unpack(const FpPoly& c, std::size_t kappa, std::size_t x_len) {
  std::size_t width = 2 * kappa;
  BivariatePoly out;
  out.x_coeffs.reserve(x_len);
  unsigned L = c.context()->limbs();
  for (std::size_t i = 0; i < x_len; ++i) {
    FpPoly chunk = FpPoly::zeros(c.context(), width);
    std::size_t base = i * width * L;
    if (base < c.raw().size()) {
      std::size_t count = std::min(width * L, c.raw().size() - base);
      auto src = c.raw().subspan(base, count);
      std::copy(src.begin(), src.end(), chunk.raw_mut().begin());
    }
    out.x_coeffs.push_back(std::move(chunk));
  }
  return out;
}

BivariatePoly ks_bivariate_multiply(const BivariatePoly& a, const BivariatePoly& b,
                                    std::size_t kappa, const PolyMultiplier& mul) {
  if (kappa == 0) raise(ErrorCode::kParameter, "kappa must be positive");
  if (a.x_coeffs.empty() || b.x_coeffs.empty()) return BivariatePoly{};
  const CtxPtr& ctx = a.x_coeffs.front().context();
  FpPoly ua = ks_bivariate_pack(a, ctx, a.x_length(), kappa);
  FpPoly ub = ks_bivariate_pack(b, ctx, b.x_length(), kappa);
  FpPoly uc = mul.multiply(ua, ub);
  return ks_bivariate_unpack(uc, kappa, a.x_length() + b.x_length() - 1);
}

BivariatePoly ks_cyclic_multiply(const BivariatePoly& a, const BivariatePoly& b, std::size_t n,
                                 std::size_t kappa, const PolyMultiplier& mul) {
  if (kappa == 0 || n == 0) raise(ErrorCode::kParameter, "n and kappa must be positive");
  if (a.x_length() > n || b.x_length() > n) {
    raise(ErrorCode::kLengthMismatch, "cyclic operands longer than n");
  }
  if (a.x_coeffs.empty() || b.x_coeffs.empty()) {
    raise(ErrorCode::kParameter, "empty operand");
  }
  const CtxPtr& ctx = a.x_coeffs.front().context();
  FpPoly ua = ks_bivariate_pack(a, ctx, n, kappa);
  FpPoly ub = ks_bivariate_pack(b, ctx, n, kappa);
  FpPoly uc = mul.cyclic_multiply(ua, ub, 2 * n * kappa);
  return ks_bivariate_unpack(uc, kappa, n);
}

}  // namespace fpmul
