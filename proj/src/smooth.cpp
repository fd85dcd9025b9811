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

#include "smooth.hpp"

#include <algorithm>
#include <cassert>
#include <map>

namespace fpmul {

BigInt Factorization::value() const {
  BigInt v(1);
  for (auto [q, e] : powers) v *= BigInt::pow(BigInt(q), e);
  return v;
}

std::vector<u64> Factorization::distinct_primes() const {
  std::vector<u64> out;
  out.reserve(powers.size());
  for (auto [q, e] : powers) out.push_back(q);
  return out;
}

void Factorization::merge(const Factorization& other) {
  std::map<u64, unsigned> acc;
  for (auto [q, e] : powers) acc[q] += e;
  for (auto [q, e] : other.powers) acc[q] += e;
  powers.assign(acc.begin(), acc.end());
}

HValue compute_H(u64 lambda) {
  if (lambda < 1) raise(ErrorCode::kParameter, "lambda must be >= 1");
  HValue out;
  out.h = BigInt(1);
  for (u64 d = 1; d <= lambda; ++d) {
    if (lambda % d != 0) continue;
    if (is_prime_u64(d + 1)) {
      out.primes.push_back(d + 1);
      out.h = BigInt::mul_u64(out.h, d + 1);
    }
  }
  return out;
}

namespace {

// Stride sieve: for every prime q <= m + 1, push q onto each lambda
// divisible by q - 1. Grown on demand as the lambda scan advances.
class HSieve {
 public:
  const std::vector<u64>& primes_for(u64 lambda) {
    ensure(lambda);
    return table_[lambda];
  }

 private:
  void ensure(u64 m) {
    if (m < table_.size()) return;
    u64 old_size = static_cast<u64>(table_.size());  // entries < old_size are complete
    u64 new_size = std::max<u64>(2 * old_size, m + 1);
    table_.resize(new_size);
    for (u64 q = 2; q <= new_size; ++q) {
      if (!is_prime_u64(q)) continue;
      u64 step = q - 1;
      u64 start = step == 0 ? 1 : ((std::max<u64>(old_size, 1) + step - 1) / step) * step;
      if (start == 0) start = step;
      for (u64 lam = start; lam < new_size; lam += step) table_[lam].push_back(q);
    }
  }

  std::vector<std::vector<u64>> table_;  // index = lambda
};

MValue build_from_primes(const PrimeContext& ctx, u64 lambda, const std::vector<u64>& h_primes,
                         const SmoothConfig& cfg) {
  const BigInt& p = ctx.modulus();
  MValue out;
  if (cfg.accidental_factors) {
    // Full (lambda+1)-smooth part of p^lambda - 1, prime powers included.
    BigInt remaining = BigInt::pow(p, lambda) - BigInt(1);
    out.m = BigInt(1);
    for (u64 q = 2; q <= lambda + 1; ++q) {
      if (!is_prime_u64(q)) continue;
      unsigned e = 0;
      while (true) {
        auto [quot, rem] = remaining.divmod_u64(q);
        if (rem != 0) break;
        remaining = std::move(quot);
        ++e;
      }
      if (e > 0) {
        out.factors.powers.emplace_back(q, e);
        out.m *= BigInt::pow(BigInt(q), e);
      }
    }
    return out;
  }
  out.m = BigInt(1);
  for (u64 q : h_primes) {
    if (p == BigInt(q)) continue;  // drop p itself
    out.factors.powers.emplace_back(q, 1);
    out.m = BigInt::mul_u64(out.m, q);
  }
  return out;
}

}  // namespace

MValue build_M(const PrimeContext& ctx, u64 lambda, const SmoothConfig& cfg) {
  if (lambda < 2) raise(ErrorCode::kParameter, "lambda must be >= 2");
  HValue h = compute_H(lambda);
  return build_from_primes(ctx, lambda, h.primes, cfg);
}

u64 choose_lambda(const PrimeContext& ctx, const BigInt& n, const SmoothConfig& cfg) {
  if (n < BigInt(2)) raise(ErrorCode::kParameter, "target must be >= 2");
  BigInt goal = BigInt::mul_u64(n, cfg.target_multiple);
  HSieve sieve;
  for (u64 lambda = 2; lambda <= cfg.lambda_max; ++lambda) {
    MValue m = build_from_primes(ctx, lambda, sieve.primes_for(lambda), cfg);
    if (m.m >= goal) return lambda;
  }
  raise(ErrorCode::kSearchExhausted, "no lambda below the configured maximum reaches the target");
}

PackedLengths package_lengths(const Factorization& m_factors, u64 big_target, u64 small_target) {
  if (small_target < 2 || small_target >= big_target) {
    raise(ErrorCode::kParameter, "targets must satisfy 2 <= S < L");
  }
  BigInt m_value = m_factors.value();
  if (m_value <= BigInt(big_target)) {
    raise(ErrorCode::kParameter, "long target must be below M");
  }

  struct Entry {
    BigInt value;
    Factorization factors;
  };
  std::vector<Entry> atoms;
  atoms.reserve(m_factors.powers.size());
  for (auto [q, e] : m_factors.powers) {
    Entry a;
    a.value = BigInt::pow(BigInt(q), e);
    a.factors.powers.emplace_back(q, e);
    atoms.push_back(std::move(a));
  }
  std::stable_sort(atoms.begin(), atoms.end(),
                   [](const Entry& x, const Entry& y) { return x.value < y.value; });

  // Minimal ascending prefix whose product reaches the long target.
  std::vector<Entry> entries;
  BigInt product(1);
  for (auto& a : atoms) {
    if (product >= BigInt(big_target)) break;
    product *= a.value;
    entries.push_back(std::move(a));
  }
  assert(product >= BigInt(big_target));

  // Merge the two smallest entries while any entry is below the short
  // target; merged entries re-enter after existing equals.
  BigInt s_value(small_target);
  auto smallest_below = [&]() {
    return !entries.empty() && entries.front().value < s_value;
  };
  while (smallest_below() && entries.size() >= 2) {
    Entry merged;
    merged.value = entries[0].value * entries[1].value;
    merged.factors = entries[0].factors;
    merged.factors.merge(entries[1].factors);
    entries.erase(entries.begin(), entries.begin() + 2);
    auto pos = std::upper_bound(entries.begin(), entries.end(), merged,
                                [](const Entry& x, const Entry& y) { return x.value < y.value; });
    entries.insert(pos, std::move(merged));
  }

  PackedLengths out;
  out.product = 1;
  for (auto& e : entries) {
    if (e.value >= (BigInt(1) << 63)) {
      raise(ErrorCode::kParameter, "packaged length exceeds 63 bits");
    }
    u64 v = e.value.to_u64();
    BigInt np = BigInt::mul_u64(BigInt(out.product), v);
    if (np >= (BigInt(1) << 63)) {
      raise(ErrorCode::kParameter, "packaged product exceeds 63 bits");
    }
    out.product = np.to_u64();
    out.lengths.push_back(v);
    out.factors.push_back(std::move(e.factors));
  }
  return out;
}

}  // namespace fpmul
