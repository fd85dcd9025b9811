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

#include "bigint.hpp"

#include <algorithm>
#include <array>
#include <memory>
#include <mutex>
#include <bit>
#include <cassert>

#include "error.hpp"

namespace fpmul {

namespace {

constexpr std::size_t kKaratsubaThreshold = 24;  // limbs
constexpr std::size_t kNttThreshold = 512;       // limbs, per operand

void add_into(std::vector<u64>& acc, std::span<const u64> b, std::size_t shift) {
  if (acc.size() < b.size() + shift) acc.resize(b.size() + shift, 0);
  u64 carry = 0;
  std::size_t i = 0;
  for (; i < b.size(); ++i) {
    u128 s = static_cast<u128>(acc[i + shift]) + b[i] + carry;
    acc[i + shift] = static_cast<u64>(s);
    carry = static_cast<u64>(s >> 64);
  }
  for (; carry != 0; ++i) {
    if (i + shift >= acc.size()) acc.push_back(0);
    u128 s = static_cast<u128>(acc[i + shift]) + carry;
    acc[i + shift] = static_cast<u64>(s);
    carry = static_cast<u64>(s >> 64);
  }
}

// acc -= b, acc must be >= b in value.
void sub_from(std::vector<u64>& acc, std::span<const u64> b) {
  u64 borrow = 0;
  for (std::size_t i = 0; i < b.size() || borrow; ++i) {
    assert(i < acc.size());
    u64 sub = (i < b.size() ? b[i] : 0);
    u64 before = acc[i];
    u64 after = before - sub - borrow;
    borrow = (before < sub || (borrow && before == sub)) ? 1 : 0;
    acc[i] = after;
  }
}

std::vector<u64> school_mul(std::span<const u64> a, std::span<const u64> b) {
  std::vector<u64> out(a.size() + b.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    u64 carry = 0;
    u64 ai = a[i];
    for (std::size_t j = 0; j < b.size(); ++j) {
      u128 cur = static_cast<u128>(ai) * b[j] + out[i + j] + carry;
      out[i + j] = static_cast<u64>(cur);
      carry = static_cast<u64>(cur >> 64);
    }
    out[i + b.size()] = carry;
  }
  return out;
}

std::vector<u64> kara_mul(std::span<const u64> a, std::span<const u64> b) {
  if (std::min(a.size(), b.size()) < kKaratsubaThreshold) return school_mul(a, b);
  std::size_t half = std::max(a.size(), b.size()) / 2;
  if (a.size() <= half || b.size() <= half) {
    // Very unbalanced: split the longer operand.
    std::span<const u64> lo_part = a.size() > half ? a : b;
    std::span<const u64> other = a.size() > half ? b : a;
    std::vector<u64> lo = kara_mul(lo_part.first(half), other);
    std::vector<u64> hi = kara_mul(lo_part.subspan(half), other);
    add_into(lo, hi, half);
    return lo;
  }
  auto a0 = a.first(half), a1 = a.subspan(half);
  auto b0 = b.first(half), b1 = b.subspan(half);
  std::vector<u64> z0 = kara_mul(a0, b0);
  std::vector<u64> z2 = kara_mul(a1, b1);
  std::vector<u64> sa(a0.begin(), a0.end());
  add_into(sa, a1, 0);
  std::vector<u64> sb(b0.begin(), b0.end());
  add_into(sb, b1, 0);
  std::vector<u64> z1 = kara_mul(sa, sb);  // >= z0 + z2, so unsigned is fine
  sub_from(z1, z0);
  while (!z1.empty() && z1.back() == 0) z1.pop_back();
  sub_from(z1, z2);
  std::vector<u64> out = std::move(z0);
  add_into(out, z1, half);
  add_into(out, z2, 2 * half);
  return out;
}

std::vector<u64> ntt_mul(std::span<const u64> a, std::span<const u64> b) {
  // Split into 16-bit digits; product digits stay below m * 2^32 < kPrime
  // for any transform size m <= 2^29, so a single prime suffices.
  std::size_t da = a.size() * 4, db = b.size() * 4;
  std::size_t need = da + db;
  std::size_t m = std::bit_ceil(need);
  std::vector<u64> fa(m, 0), fb(m, 0);
  for (std::size_t i = 0; i < da; ++i) fa[i] = (a[i / 4] >> (16 * (i % 4))) & 0xFFFF;
  for (std::size_t i = 0; i < db; ++i) fb[i] = (b[i / 4] >> (16 * (i % 4))) & 0xFFFF;
  gl::ntt(fa, false);
  gl::ntt(fb, false);
  for (std::size_t i = 0; i < m; ++i) fa[i] = gl::mul(fa[i], fb[i]);
  gl::ntt(fa, true);
  // Carry 16-bit digit sums back into 64-bit limbs.
  std::vector<u64> out(a.size() + b.size() + 1, 0);
  u128 carry = 0;
  for (std::size_t w = 0; w < out.size(); ++w) {
    u128 acc = carry;
    for (std::size_t j = 0; j < 4; ++j) {
      std::size_t idx = 4 * w + j;
      if (idx < m) acc += static_cast<u128>(fa[idx]) << (16 * j);
    }
    out[w] = static_cast<u64>(acc);
    carry = acc >> 64;
  }
  assert(carry == 0);
  return out;
}

}  // namespace

BigInt BigInt::from_words(std::vector<u64> words) {
  BigInt r;
  r.w_ = std::move(words);
  r.trim();
  return r;
}

std::size_t BigInt::bit_length() const {
  if (w_.empty()) return 0;
  return 64 * (w_.size() - 1) + (64 - std::countl_zero(w_.back()));
}

bool BigInt::bit(std::size_t i) const {
  std::size_t limb = i / 64;
  if (limb >= w_.size()) return false;
  return (w_[limb] >> (i % 64)) & 1u;
}

u64 BigInt::to_u64() const {
  if (w_.size() > 1) raise(ErrorCode::kParameter, "BigInt does not fit in 64 bits");
  return w_.empty() ? 0 : w_[0];
}

int BigInt::compare(const BigInt& a, const BigInt& b) {
  if (a.w_.size() != b.w_.size()) return a.w_.size() < b.w_.size() ? -1 : 1;
  for (std::size_t i = a.w_.size(); i-- > 0;) {
    if (a.w_[i] != b.w_[i]) return a.w_[i] < b.w_[i] ? -1 : 1;
  }
  return 0;
}

BigInt operator+(const BigInt& a, const BigInt& b) {
  std::vector<u64> out(a.w_.begin(), a.w_.end());
  add_into(out, b.w_, 0);
  return BigInt::from_words(std::move(out));
}

BigInt operator-(const BigInt& a, const BigInt& b) {
  if (BigInt::compare(a, b) < 0) raise(ErrorCode::kParameter, "BigInt subtraction underflow");
  std::vector<u64> out(a.w_.begin(), a.w_.end());
  sub_from(out, b.w_);
  return BigInt::from_words(std::move(out));
}

BigInt operator*(const BigInt& a, const BigInt& b) {
  if (a.is_zero() || b.is_zero()) return BigInt();
  std::vector<u64> out;
  if (std::min(a.w_.size(), b.w_.size()) >= kNttThreshold) {
    out = ntt_mul(a.w_, b.w_);
  } else {
    out = kara_mul(a.w_, b.w_);
  }
  return BigInt::from_words(std::move(out));
}

BigInt BigInt::operator<<(std::size_t bits) const {
  if (is_zero()) return BigInt();
  std::size_t limb_shift = bits / 64, bit_shift = bits % 64;
  std::vector<u64> out(w_.size() + limb_shift + 1, 0);
  for (std::size_t i = 0; i < w_.size(); ++i) {
    out[i + limb_shift] |= w_[i] << bit_shift;
    if (bit_shift != 0) out[i + limb_shift + 1] |= w_[i] >> (64 - bit_shift);
  }
  return from_words(std::move(out));
}

BigInt BigInt::operator>>(std::size_t bits) const {
  std::size_t limb_shift = bits / 64, bit_shift = bits % 64;
  if (limb_shift >= w_.size()) return BigInt();
  std::vector<u64> out(w_.begin() + static_cast<std::ptrdiff_t>(limb_shift), w_.end());
  if (bit_shift != 0) {
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] >>= bit_shift;
      if (i + 1 < out.size()) out[i] |= out[i + 1] << (64 - bit_shift);
    }
  }
  return from_words(std::move(out));
}

std::pair<BigInt, BigInt> BigInt::divmod(const BigInt& a, const BigInt& b) {
  if (b.is_zero()) raise(ErrorCode::kParameter, "division by zero");
  if (b.w_.size() == 1) {
    auto [q, r] = a.divmod_u64(b.w_[0]);
    return {std::move(q), BigInt(r)};
  }
  if (compare(a, b) < 0) return {BigInt(), a};

  // Knuth algorithm D with 64-bit limbs and 128-bit quotient estimates.
  int shift = std::countl_zero(b.w_.back());
  BigInt u = a << static_cast<std::size_t>(shift);
  BigInt v = b << static_cast<std::size_t>(shift);
  std::size_t n = v.w_.size();
  std::size_t m = u.w_.size() - n;
  std::vector<u64> un(u.w_.begin(), u.w_.end());
  un.resize(u.w_.size() + 1, 0);
  const std::vector<u64>& vn = v.w_;
  std::vector<u64> q(m + 1, 0);

  using i128 = __int128;
  const u64 v_hi = vn[n - 1];
  const u64 v_lo = vn[n - 2];
  const u64 kMax = ~0ull;
  for (std::size_t j = m + 1; j-- > 0;) {
    u128 num = (static_cast<u128>(un[j + n]) << 64) | un[j + n - 1];
    u128 qhat, rhat;
    if (un[j + n] >= v_hi) {
      // Normalisation keeps un[j+n] <= v_hi, so clamp to the maximum digit.
      qhat = kMax;
      rhat = num - qhat * v_hi;
    } else {
      qhat = num / v_hi;
      rhat = num % v_hi;
    }
    while (rhat <= kMax && qhat * v_lo > ((rhat << 64) | un[j + n - 2])) {
      --qhat;
      rhat += v_hi;
    }
    // Multiply-subtract qhat * v from un[j .. j+n].
    u64 qd = static_cast<u64>(qhat);
    i128 borrow = 0;
    for (std::size_t i = 0; i < n; ++i) {
      u128 p = static_cast<u128>(qd) * vn[i];
      i128 t = static_cast<i128>(un[i + j]) - borrow - static_cast<i128>(static_cast<u64>(p));
      un[i + j] = static_cast<u64>(t);
      borrow = static_cast<i128>(p >> 64) - (t >> 64);
    }
    i128 t = static_cast<i128>(un[j + n]) - borrow;
    un[j + n] = static_cast<u64>(t);
    if (t < 0) {
      // qhat was one too large; add v back.
      --qd;
      u64 c = 0;
      for (std::size_t i = 0; i < n; ++i) {
        u128 s = static_cast<u128>(un[i + j]) + vn[i] + c;
        un[i + j] = static_cast<u64>(s);
        c = static_cast<u64>(s >> 64);
      }
      un[j + n] += c;
    }
    q[j] = qd;
  }
  un.resize(n);
  BigInt rem = from_words(std::move(un)) >> static_cast<std::size_t>(shift);
  return {from_words(std::move(q)), std::move(rem)};
}

std::pair<BigInt, u64> BigInt::divmod_u64(u64 d) const {
  if (d == 0) raise(ErrorCode::kParameter, "division by zero");
  std::vector<u64> q(w_.size(), 0);
  u64 rem = 0;
  for (std::size_t i = w_.size(); i-- > 0;) {
    u128 cur = (static_cast<u128>(rem) << 64) | w_[i];
    q[i] = static_cast<u64>(cur / d);
    rem = static_cast<u64>(cur % d);
  }
  return {from_words(std::move(q)), rem};
}

BigInt BigInt::mul_u64(const BigInt& a, u64 m) {
  if (m == 0 || a.is_zero()) return BigInt();
  std::vector<u64> out(a.w_.size() + 1, 0);
  u64 carry = 0;
  for (std::size_t i = 0; i < a.w_.size(); ++i) {
    u128 p = static_cast<u128>(a.w_[i]) * m + carry;
    out[i] = static_cast<u64>(p);
    carry = static_cast<u64>(p >> 64);
  }
  out[a.w_.size()] = carry;
  return from_words(std::move(out));
}

BigInt BigInt::add_u64(const BigInt& a, u64 m) { return a + BigInt(m); }

BigInt BigInt::sub_u64(const BigInt& a, u64 m) { return a - BigInt(m); }

BigInt BigInt::pow(const BigInt& base, u64 exp) {
  BigInt result(1);
  BigInt b = base;
  while (exp != 0) {
    if (exp & 1u) result *= b;
    exp >>= 1;
    if (exp != 0) b *= b;
  }
  return result;
}

BigInt BigInt::from_decimal(std::string_view s) {
  if (s.empty()) raise(ErrorCode::kParse, "empty decimal string");
  BigInt r;
  std::size_t i = 0;
  while (i < s.size()) {
    std::size_t chunk = std::min<std::size_t>(19, s.size() - i);
    u64 value = 0, scale = 1;
    for (std::size_t j = 0; j < chunk; ++j) {
      char c = s[i + j];
      if (c < '0' || c > '9') raise(ErrorCode::kParse, "invalid decimal digit");
      value = value * 10 + static_cast<u64>(c - '0');
      scale *= 10;
    }
    r = mul_u64(r, scale) + BigInt(value);
    i += chunk;
  }
  return r;
}

std::string BigInt::to_decimal() const {
  if (is_zero()) return "0";
  constexpr u64 kChunk = 10000000000000000000ull;  // 10^19
  std::vector<u64> chunks;
  BigInt cur = *this;
  while (!cur.is_zero()) {
    auto [q, r] = cur.divmod_u64(kChunk);
    chunks.push_back(r);
    cur = std::move(q);
  }
  std::string out = std::to_string(chunks.back());
  for (std::size_t i = chunks.size() - 1; i-- > 0;) {
    std::string part = std::to_string(chunks[i]);
    out += std::string(19 - part.size(), '0') + part;
  }
  return out;
}

std::size_t BigInt::byte_length() const { return (bit_length() + 7) / 8; }

BigInt BigInt::from_bytes(std::span<const std::uint8_t> bytes) {
  std::vector<u64> words((bytes.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    words[i / 8] |= static_cast<u64>(bytes[i]) << (8 * (i % 8));
  }
  return from_words(std::move(words));
}

namespace {

u64 mulmod_u64(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod_u64(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1u) result = mulmod_u64(result, base, m);
    base = mulmod_u64(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool miller_rabin_u64(u64 n, u64 a) {
  u64 d = n - 1;
  int r = 0;
  while ((d & 1u) == 0) {
    d >>= 1;
    ++r;
  }
  u64 x = powmod_u64(a % n, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 1; i < r; ++i) {
    x = mulmod_u64(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

BigInt powmod_big(const BigInt& base, const BigInt& exp, const BigInt& m) {
  BigInt result(1);
  BigInt b = base % m;
  std::size_t bits = exp.bit_length();
  for (std::size_t i = bits; i-- > 0;) {
    result = (result * result) % m;
    if (exp.bit(i)) result = (result * b) % m;
  }
  return result;
}

}  // namespace

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  // This base set is known to be deterministic for all 64-bit inputs.
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (!miller_rabin_u64(n, a)) return false;
  }
  return true;
}

bool is_prime(const BigInt& n) {
  if (n.fits_u64()) return is_prime_u64(n.is_zero() ? 0 : n.to_u64());
  if (n.is_even()) return false;
  for (u64 p : {3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull, 41ull,
                43ull, 47ull, 53ull, 59ull, 61ull, 67ull, 71ull, 73ull, 79ull, 83ull, 89ull, 97ull}) {
    if (n.mod_u64(p) == 0) return false;
  }
  BigInt n1 = BigInt::sub_u64(n, 1);
  BigInt d = n1;
  std::size_t r = 0;
  while (d.is_even()) {
    d = d >> 1;
    ++r;
  }
  u64 state = 0x9e3779b97f4a7c15ull;
  for (int round = 0; round < 40; ++round) {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    BigInt a = (BigInt(state) % BigInt::sub_u64(n, 3)) + BigInt(2);
    BigInt x = powmod_big(a, d, n);
    if (x.is_one() || x == n1) continue;
    bool composite = true;
    for (std::size_t i = 1; i < r; ++i) {
      x = (x * x) % n;
      if (x == n1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace gl {

u64 pow(u64 base, u64 exp) {
  u64 result = 1;
  while (exp != 0) {
    if (exp & 1u) result = mul(result, base);
    base = mul(base, base);
    exp >>= 1;
  }
  return result;
}

namespace {

// Multiplication by a fixed w < p with the quotient precomputed as
// floor(w * 2^64 / p); two plain products and one correction.
inline u64 mul_shoup(u64 a, u64 w, u64 w_pre) {
  u64 q = static_cast<u64>((static_cast<u128>(w_pre) * a) >> 64);
  u64 r = w * a - q * kPrime;  // wraps; representative below 2p
  if (r >= kPrime) r -= kPrime;
  return r;
}

// Stage-major twiddle tables: the stage-s twiddle for butterfly j is
// base^(j * 2^(32-s)) regardless of the transform size, so one table per
// direction serves every size. Stage s occupies [2^(s-1) - 1, 2^s - 1).
struct StageTables {
  int stages = 0;
  std::vector<u64> w;
  std::vector<u64> w_pre;  // floor(w * 2^64 / p) for the two-product trick
};

std::shared_ptr<const StageTables> stage_tables_for(int log_n, bool inverse) {
  static std::mutex mu;
  static std::shared_ptr<const StageTables> cache[2];
  std::lock_guard lock(mu);
  auto& slot = cache[inverse ? 1 : 0];
  if (slot && slot->stages >= log_n) return slot;
  // kGenerator^((p-1)/2^kAdicity) has order exactly 2^kAdicity.
  static const u64 kBaseRoot = pow(kGenerator, (kPrime - 1) >> kAdicity);
  assert(pow(kBaseRoot, u64{1} << (kAdicity - 1)) == kPrime - 1);
  auto table = std::make_shared<StageTables>();
  table->stages = log_n;
  std::size_t total = (std::size_t{1} << log_n) - 1;
  table->w.resize(total);
  table->w_pre.resize(total);
  for (int s = 1; s <= log_n; ++s) {
    std::size_t off = (std::size_t{1} << (s - 1)) - 1;
    std::size_t count = std::size_t{1} << (s - 1);
    u64 w_s = pow(kBaseRoot, u64{1} << (kAdicity - s));
    if (inverse) w_s = inv(w_s);
    table->w[off] = 1;
    for (std::size_t j = 1; j < count; ++j) table->w[off + j] = mul(table->w[off + j - 1], w_s);
    for (std::size_t j = 0; j < count; ++j) {
      table->w_pre[off + j] =
          static_cast<u64>((static_cast<u128>(table->w[off + j]) << 64) / kPrime);
    }
  }
  slot = table;
  return slot;
}

}  // namespace

void ntt(std::span<u64> data, bool inverse) {
  std::size_t n = data.size();
  assert(std::has_single_bit(n));
  if (n == 1) return;
  int log_n = std::countr_zero(n);

  // Bit-reversal permutation.
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }

  auto table = stage_tables_for(log_n, inverse);

  for (int s = 1; s <= log_n; ++s) {
    std::size_t len = std::size_t{1} << s;
    std::size_t half = len / 2;
    const u64* w = table->w.data() + (half - 1);
    const u64* w_pre = table->w_pre.data() + (half - 1);
    for (std::size_t i = 0; i < n; i += len) {
      u64* lo = data.data() + i;
      u64* hi = lo + half;
      for (std::size_t j = 0; j < half; ++j) {
        u64 u = lo[j];
        u64 v = mul_shoup(hi[j], w[j], w_pre[j]);
        lo[j] = add(u, v);
        hi[j] = sub(u, v);
      }
    }
  }
  if (inverse) {
    u64 n_inv = inv(static_cast<u64>(n));
    for (auto& x : data) x = mul(x, n_inv);
  }
}

}  // namespace gl

}  // namespace fpmul
