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

#include "verify.hpp"

#include <map>
#include <random>

namespace fpmul {

u64 poly_checksum(const FpPoly& poly) {
  FpPoly t = poly.trimmed();
  u64 h = 1469598103934665603ull;  // FNV-1a offset basis
  for (u64 w : t.raw()) {
    h ^= w;
    h *= 1099511628211ull;
  }
  h ^= t.length();
  h *= 1099511628211ull;
  return h;
}

namespace {

struct Sweep {
  const VerifyOptions& opts;
  VerifyResult result;
  std::map<u64, std::shared_ptr<Multiplier>> multipliers;
  std::map<std::tuple<u64, std::size_t, u64>, std::pair<FieldPtr, ExtElement>> theta_cache;
  std::map<std::pair<u64, std::size_t>, FieldPtr> field_cache;
  KsBaseMultiplier ks;

  const Multiplier& multiplier(const CtxPtr& ctx) {
    auto it = multipliers.find(ctx->p64());
    if (it == multipliers.end()) {
      it = multipliers.emplace(ctx->p64(), std::make_shared<Multiplier>(ctx)).first;
    }
    return *it->second;
  }

  void record(bool ok, const std::string& kind, u64 p, u64 n, u64 case_seed) {
    ++result.cases_run;
    if (!ok) {
      ++result.failures;
      if (!result.first_failure) {
        result.first_failure = VerifyFailure{kind, p, n, case_seed};
      }
    }
  }

  bool faulted(u64 case_index) {
    return opts.inject_fault_at >= 0 && case_index == static_cast<u64>(opts.inject_fault_at);
  }

  void case_multiply(u64 index, u64 case_seed) {
    std::mt19937_64 rng(case_seed);
    u64 p = opts.primes[rng() % opts.primes.size()];
    auto ctx = PrimeContext::create_u64(p);
    std::size_t la = 1 + rng() % opts.max_n;
    std::size_t lb = 1 + rng() % opts.max_n;
    FpPoly a = FpPoly::zeros(ctx, la), b = FpPoly::zeros(ctx, lb);
    for (std::size_t i = 0; i < la; ++i) a.set64(i, ctx->reduce(rng()));
    for (std::size_t i = 0; i < lb; ++i) b.set64(i, ctx->reduce(rng()));
    FpPoly got = multiplier(ctx).multiply(a, b);
    if (faulted(index) && got.length() > 0) {
      got.set64(0, ctx->add(got.get64(0), 1));
    }
    ++result.multiply_cases;
    record(got == poly_mul_naive(a, b), "multiply", p, std::max(la, lb), case_seed);
  }

  void case_dft(u64 index, u64 case_seed) {
    std::mt19937_64 rng(case_seed);
    struct FieldSpec {
      u64 p;
      std::size_t kappa;
    };
    static const FieldSpec specs[] = {{13, 1}, {2, 4}, {3, 3}, {5, 2}};
    const FieldSpec& spec = specs[rng() % 4];
    auto key = std::make_pair(spec.p, spec.kappa);
    auto fit = field_cache.find(key);
    if (fit == field_cache.end()) {
      auto ctx = PrimeContext::create_u64(spec.p);
      fit = field_cache.emplace(key, ExtField::find_irreducible(ctx, spec.kappa, 2024)).first;
    }
    const FieldPtr& field = fit->second;
    u64 group = field->order_minus_one().to_u64();
    // Random divisor of the group order, capped at 256.
    std::vector<u64> divisors;
    for (u64 d = 2; d <= std::min<u64>(group, 256); ++d) {
      if (group % d == 0) divisors.push_back(d);
    }
    u64 n = divisors[rng() % divisors.size()];
    // Random ordered factorization.
    std::vector<u64> factors;
    u64 rem = n;
    while (rem > 1) {
      std::vector<u64> opts_f;
      for (u64 f = 2; f <= rem; ++f) {
        if (rem % f == 0) opts_f.push_back(f);
      }
      u64 f = opts_f[rng() % opts_f.size()];
      factors.push_back(f);
      rem /= f;
    }
    std::vector<u64> n_primes;
    u64 r = n;
    for (u64 q = 2; q * q <= r; ++q) {
      if (r % q == 0) {
        n_primes.push_back(q);
        while (r % q == 0) r /= q;
      }
    }
    if (r > 1) n_primes.push_back(r);

    ExtElement w = find_root_of_order(field, n, n_primes, rng());
    auto plan = DftPlan::build(field, n, factors, w, ks);
    ExtVec a = ExtVec::zeros(n, field->kappa());
    for (auto& x : a.w) x = field->context()->reduce(rng());
    ExtVec got = plan->dft(a, ks);
    if (faulted(index)) got.w[0] ^= 1;
    ExtVec want = dft_direct(field, a, w);
    ExtVec back = plan->idft(got, ks);
    bool ok = got.w == want.w && back.w == a.w;
    ++result.dft_cases;
    record(ok, "dft", spec.p, n, case_seed);
  }

  void case_cf(u64 index, u64 case_seed) {
    std::mt19937_64 rng(case_seed);
    static const u64 ps[] = {2, 3, 7};
    u64 p = ps[rng() % 3];
    auto ctx = PrimeContext::create_u64(p);
    u64 big_n = 2 + rng() % 7;
    u64 n = big_n + rng() % std::min<u64>(opts.max_n, 200);
    u64 chunks = (n + big_n - 1) / big_n;
    std::size_t kappa = 2 * chunks;
    while (BigInt::pow(BigInt(p), kappa) <= BigInt(big_n) * BigInt(big_n)) ++kappa;

    auto key = std::make_tuple(p, kappa, big_n);
    auto tit = theta_cache.find(key);
    if (tit == theta_cache.end()) {
      tit = theta_cache.emplace(key, find_theta(ctx, kappa, big_n, 7777)).first;
    }
    auto [field, theta] = tit->second;
    CfPlan plan = cf_plan(n, big_n, field, theta);
    FpPoly u = FpPoly::zeros(ctx, n), v = FpPoly::zeros(ctx, n);
    for (std::size_t i = 0; i < n; ++i) u.set64(i, ctx->reduce(rng()));
    for (std::size_t i = 0; i < n; ++i) v.set64(i, ctx->reduce(rng()));
    ExtVec w = ext_cyclic_naive(field, cf_split_weight(u, plan), cf_split_weight(v, plan), big_n);
    FpPoly got = cf_recombine(w, plan);
    if (faulted(index)) got.set64(0, ctx->add(got.get64(0), 1));
    ++result.cf_cases;
    record(got == poly_cyclic_naive(u, v, n), "crandall-fagin", p, n, case_seed);
  }

  void case_bluestein(u64 index, u64 case_seed) {
    std::mt19937_64 rng(case_seed);
    u64 n = 2 + rng() % 127;
    u64 p = n + 1;
    while (!(is_prime_u64(p) && (p - 1) % n == 0)) p += n;
    auto key = std::make_pair(p, std::size_t{1});
    auto fit = field_cache.find(key);
    if (fit == field_cache.end()) {
      auto ctx = PrimeContext::create_u64(p);
      fit = field_cache.emplace(key, ExtField::find_irreducible(ctx, 1, 5)).first;
    }
    const FieldPtr& field = fit->second;
    std::vector<u64> n_primes;
    u64 r = n;
    for (u64 q = 2; q * q <= r; ++q) {
      if (r % q == 0) {
        n_primes.push_back(q);
        while (r % q == 0) r /= q;
      }
    }
    if (r > 1) n_primes.push_back(r);
    ExtElement w = find_root_of_order(field, n, n_primes, rng());
    ExtVec a = ExtVec::zeros(n, 1);
    for (auto& x : a.w) x = field->context()->reduce(rng());
    ExtVec got = bluestein(field, w, n, a, ks);
    if (faulted(index)) got.w[0] ^= 1;
    ++result.bluestein_cases;
    record(got.w == dft_direct(field, a, w).w, "bluestein", p, n, case_seed);
  }
};

}  // namespace

VerifyResult run_verify(const VerifyOptions& opts) {
  if (opts.primes.empty()) raise(ErrorCode::kParameter, "need at least one prime");
  for (u64 p : opts.primes) {
    if (!is_prime_u64(p)) raise(ErrorCode::kNotPrime, std::to_string(p) + " is not prime");
  }
  Sweep sweep{opts, {}, {}, {}, {}, {}};
  std::mt19937_64 seeder(opts.seed);
  for (u64 i = 0; i < opts.cases; ++i) {
    u64 case_seed = seeder();
    switch (i % 4) {
      case 0: sweep.case_multiply(i, case_seed); break;
      case 1: sweep.case_dft(i, case_seed); break;
      case 2: sweep.case_cf(i, case_seed); break;
      default: sweep.case_bluestein(i, case_seed); break;
    }
  }
  return sweep.result;
}

}  // namespace fpmul
