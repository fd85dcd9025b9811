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

#ifndef FPMUL_BIGINT_HPP
#define FPMUL_BIGINT_HPP

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fpmul {

#if !defined(__SIZEOF_INT128__)
#error "fpmul requires compiler support for unsigned __int128 (GCC/Clang)."
#endif

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using u128 = unsigned __int128;

/// Non-negative arbitrary-precision integer on 64-bit limbs (little-endian,
/// no trailing zero limbs). Multiplication picks schoolbook, Karatsuba or a
/// 16-bit-digit NTT over the prime 2^64 - 2^32 + 1 depending on size, so
/// large products are quasi-linear.
class BigInt {
 public:
  BigInt() = default;
  explicit BigInt(u64 v) {
    if (v != 0) w_.push_back(v);
  }

  static BigInt from_decimal(std::string_view s);  // throws Error on bad input
  static BigInt from_words(std::vector<u64> words);

  bool is_zero() const { return w_.empty(); }
  bool is_one() const { return w_.size() == 1 && w_[0] == 1; }
  bool is_even() const { return w_.empty() || (w_[0] & 1u) == 0; }

  std::size_t limbs() const { return w_.size(); }
  std::span<const u64> words() const { return w_; }

  // Number of significant bits; 0 for zero.
  std::size_t bit_length() const;
  bool bit(std::size_t i) const;

  bool fits_u64() const { return w_.size() <= 1; }
  u64 to_u64() const;  // throws if it does not fit

  static int compare(const BigInt& a, const BigInt& b);

  friend bool operator==(const BigInt& a, const BigInt& b) { return compare(a, b) == 0; }
  friend bool operator!=(const BigInt& a, const BigInt& b) { return compare(a, b) != 0; }
  friend bool operator<(const BigInt& a, const BigInt& b) { return compare(a, b) < 0; }
  friend bool operator<=(const BigInt& a, const BigInt& b) { return compare(a, b) <= 0; }
  friend bool operator>(const BigInt& a, const BigInt& b) { return compare(a, b) > 0; }
  friend bool operator>=(const BigInt& a, const BigInt& b) { return compare(a, b) >= 0; }

  friend BigInt operator+(const BigInt& a, const BigInt& b);
  friend BigInt operator-(const BigInt& a, const BigInt& b);  // requires a >= b
  friend BigInt operator*(const BigInt& a, const BigInt& b);

  BigInt& operator+=(const BigInt& b) { return *this = *this + b; }
  BigInt& operator-=(const BigInt& b) { return *this = *this - b; }
  BigInt& operator*=(const BigInt& b) { return *this = *this * b; }

  BigInt operator<<(std::size_t bits) const;
  BigInt operator>>(std::size_t bits) const;

  // Quotient and remainder with 0 <= r < b. Throws on division by zero.
  static std::pair<BigInt, BigInt> divmod(const BigInt& a, const BigInt& b);
  friend BigInt operator/(const BigInt& a, const BigInt& b) { return divmod(a, b).first; }
  friend BigInt operator%(const BigInt& a, const BigInt& b) { return divmod(a, b).second; }

  std::pair<BigInt, u64> divmod_u64(u64 d) const;
  u64 mod_u64(u64 d) const { return divmod_u64(d).second; }
  bool divisible_by(const BigInt& d) const { return (*this % d).is_zero(); }

  static BigInt mul_u64(const BigInt& a, u64 m);
  static BigInt add_u64(const BigInt& a, u64 m);
  static BigInt sub_u64(const BigInt& a, u64 m);  // requires a >= m

  static BigInt pow(const BigInt& base, u64 exp);

  std::string to_decimal() const;

  // Little-endian byte access, used by the bit-packing code.
  std::size_t byte_length() const;
  std::uint8_t byte_at(std::size_t i) const {
    std::size_t limb = i / 8;
    if (limb >= w_.size()) return 0;
    return static_cast<std::uint8_t>(w_[limb] >> (8 * (i % 8)));
  }
  static BigInt from_bytes(std::span<const std::uint8_t> bytes);

 private:
  void trim() {
    while (!w_.empty() && w_.back() == 0) w_.pop_back();
  }

  std::vector<u64> w_;
};

/// Deterministic Miller-Rabin for 64-bit inputs; probabilistic (fixed 40
/// pseudo-random bases) above that.
bool is_prime_u64(u64 n);
bool is_prime(const BigInt& n);

namespace gl {

// Arithmetic modulo 29 * 2^57 + 1 (generator 3), used by the integer NTT.
// The prime stays below 2^63 so twiddles can use the two-product trick
// with a precomputed quotient.
inline constexpr u64 kPrime = 4179340454199820289ull;
inline constexpr int kAdicity = 57;
inline constexpr u64 kGenerator = 3;

inline u64 mul(u64 a, u64 b) { return static_cast<u64>(static_cast<u128>(a) * b % kPrime); }
inline u64 add(u64 a, u64 b) {
  u64 s = a + b;
  if (s >= kPrime) s -= kPrime;
  return s;
}
inline u64 sub(u64 a, u64 b) { return a >= b ? a - b : a + kPrime - b; }
u64 pow(u64 base, u64 exp);
inline u64 inv(u64 a) { return pow(a, kPrime - 2); }

// In-place power-of-two NTT on values mod kPrime. data.size() must be a
// power of two not exceeding 2^kAdicity.
void ntt(std::span<u64> data, bool inverse);

}  // namespace gl

}  // namespace fpmul

#endif  // FPMUL_BIGINT_HPP
