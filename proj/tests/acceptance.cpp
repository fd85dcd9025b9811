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

// End-to-end acceptance suite. Each criterion prints one line; the binary
// exits nonzero if any hard criterion fails. The benchmark-trend criterion
// is soft: its measurements are reported but do not fail the run (clock
// noise), while its checksum cross-checks stay hard.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <vector>

#include "crandall_fagin.hpp"
#include "multiplier.hpp"
#include "smooth.hpp"
#include "verify.hpp"

using namespace fpmul;

namespace {

int g_failures = 0;

void report(int index, const std::string& name, bool pass, const std::string& detail = "") {
  std::printf("[%s] criterion %d: %s%s%s\n", pass ? "PASS" : "FAIL", index, name.c_str(),
              detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

void run_criterion(int index, const std::string& name, const std::function<bool(std::string&)>& fn) {
  std::string detail;
  bool pass = false;
  try {
    pass = fn(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  report(index, name, pass, detail);
}

FpPoly random_poly(const CtxPtr& ctx, std::size_t len, std::mt19937_64& rng) {
  FpPoly p = FpPoly::zeros(ctx, len);
  for (std::size_t i = 0; i < len; ++i) p.set64(i, ctx->reduce(rng()));
  return p;
}

// --- criterion 1: multiply vs schoolbook oracle -----------------------------

bool criterion_multiply(std::string& detail) {
  const u64 primes[] = {2, 3, 5, 7, 13, 101, (u64{1} << 31) - 1};
  std::mt19937_64 rng(0xACCE5501);
  u64 cases = 0, failures = 0;
  for (u64 p : primes) {
    auto ctx = PrimeContext::create_u64(p);
    Multiplier mul(ctx);
    for (int round = 0; round < 148; ++round) {
      // Log-uniform degrees up to 4096.
      auto pick = [&]() {
        unsigned e = static_cast<unsigned>(rng() % 12);
        return 1 + rng() % (u64{1} << e);
      };
      std::size_t la = pick(), lb = pick();
      FpPoly a = random_poly(ctx, la, rng);
      FpPoly b = random_poly(ctx, lb, rng);
      if (mul.multiply(a, b) != poly_mul_naive(a, b)) ++failures;
      ++cases;
    }
    // Full-size corners.
    for (int round = 0; round < 2; ++round) {
      FpPoly a = random_poly(ctx, 4096, rng);
      FpPoly b = random_poly(ctx, 4096, rng);
      if (mul.multiply(a, b) != poly_mul_naive(a, b)) ++failures;
      ++cases;
    }
  }
  detail = std::to_string(cases) + " cases, " + std::to_string(failures) + " mismatches";
  return cases >= 1000 && failures == 0;
}

// --- criterion 2: transform plans vs direct evaluation ----------------------

void ordered_factorizations(u64 n, std::vector<u64>& cur, std::vector<std::vector<u64>>& out) {
  if (n == 1) {
    if (!cur.empty()) out.push_back(cur);
    return;
  }
  for (u64 f = 2; f <= n; ++f) {
    if (n % f == 0) {
      cur.push_back(f);
      ordered_factorizations(n / f, cur, out);
      cur.pop_back();
    }
  }
}

bool criterion_dft(std::string& detail) {
  struct Spec {
    u64 p;
    std::size_t kappa;
  };
  const Spec specs[] = {{13, 1}, {2, 4}, {3, 3}, {5, 2}};
  std::mt19937_64 rng(0xACCE5502);
  KsBaseMultiplier ks;
  u64 plans = 0, failures = 0;
  bool saw_three_factors = false;
  for (const Spec& spec : specs) {
    auto ctx = PrimeContext::create_u64(spec.p);
    auto field = spec.kappa == 1
                     ? ExtField::create(ctx, FpPoly::from_u64(ctx, {0, 1}))
                     : ExtField::find_irreducible(ctx, spec.kappa, 33);
    u64 group = field->order_minus_one().to_u64();
    for (u64 n = 2; n <= std::min<u64>(group, 256); ++n) {
      if (group % n != 0) continue;
      std::vector<u64> n_primes;
      u64 r = n;
      for (u64 q = 2; q * q <= r; ++q) {
        if (r % q == 0) {
          n_primes.push_back(q);
          while (r % q == 0) r /= q;
        }
      }
      if (r > 1) n_primes.push_back(r);
      ExtElement w = find_root_of_order(field, n, n_primes, 55);
      std::vector<std::vector<u64>> lists;
      std::vector<u64> cur;
      ordered_factorizations(n, cur, lists);
      for (const auto& factors : lists) {
        if (factors.size() >= 3) saw_three_factors = true;
        auto plan = DftPlan::build(field, n, factors, w, ks);
        ExtVec a = ExtVec::zeros(n, field->kappa());
        for (auto& x : a.w) x = ctx->reduce(rng());
        ExtVec got = plan->dft(a, ks);
        ExtVec want = dft_direct(field, a, w);
        ExtVec back = plan->idft(got, ks);
        if (got.w != want.w || back.w != a.w) ++failures;
        ++plans;
      }
    }
  }
  detail = std::to_string(plans) + " plans, " + std::to_string(failures) + " mismatches";
  return failures == 0 && saw_three_factors && plans > 0;
}

// --- criterion 3: chirp transform, both parities ----------------------------

bool criterion_bluestein(std::string& detail) {
  std::mt19937_64 rng(0xACCE5503);
  KsBaseMultiplier ks;
  u64 cases = 0, failures = 0, even_cases = 0, odd_cases = 0;
  for (u64 n = 2; n <= 128; ++n) {
    u64 p = n + 1;
    while (!(is_prime_u64(p) && (p - 1) % n == 0)) p += n;
    auto ctx = PrimeContext::create_u64(p);
    auto field = ExtField::create(ctx, FpPoly::from_u64(ctx, {0, 1}));
    std::vector<u64> n_primes;
    u64 r = n;
    for (u64 q = 2; q * q <= r; ++q) {
      if (r % q == 0) {
        n_primes.push_back(q);
        while (r % q == 0) r /= q;
      }
    }
    if (r > 1) n_primes.push_back(r);
    ExtElement w = find_root_of_order(field, n, n_primes, 77);
    ExtVec a = ExtVec::zeros(n, 1);
    for (auto& x : a.w) x = ctx->reduce(rng());
    ExtVec got = bluestein(field, w, n, a, ks);
    if (got.w != dft_direct(field, a, w).w) ++failures;
    (n % 2 == 0 ? even_cases : odd_cases) += 1;
    ++cases;
  }
  detail = std::to_string(cases) + " lengths (" + std::to_string(odd_cases) + " odd, " +
           std::to_string(even_cases) + " even), " + std::to_string(failures) + " mismatches";
  return failures == 0 && even_cases > 0 && odd_cases > 0;
}

// --- criterion 4: weighted-split pipeline vs naive cyclic -------------------

bool criterion_cf(std::string& detail) {
  std::mt19937_64 rng(0xACCE5504);
  const u64 primes[] = {2, 3, 7};
  std::map<std::tuple<u64, std::size_t, u64>, std::pair<FieldPtr, ExtElement>> cache;
  u64 cases = 0, failures = 0, nondivisible = 0;
  while (cases < 200) {
    u64 p = primes[rng() % 3];
    auto ctx = PrimeContext::create_u64(p);
    u64 n = 2 + rng() % 2047;
    u64 lo = std::max<u64>(2, (n + 63) / 64);  // keep kappa moderate
    u64 hi = std::min<u64>(n, 128);
    if (lo > hi) continue;
    u64 big_n = lo + rng() % (hi - lo + 1);
    u64 chunks = (n + big_n - 1) / big_n;
    std::size_t kappa = 2 * chunks;
    while (BigInt::pow(BigInt(p), kappa) <= BigInt(big_n) * BigInt(big_n)) ++kappa;

    auto key = std::make_tuple(p, kappa, big_n);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, find_theta(ctx, kappa, big_n, 4242)).first;
    auto [field, theta] = it->second;
    CfPlan plan = cf_plan(n, big_n, field, theta);
    if (n % big_n != 0) ++nondivisible;

    FpPoly u = random_poly(ctx, n, rng);
    FpPoly v = random_poly(ctx, n, rng);
    ExtVec w = ext_cyclic_naive(field, cf_split_weight(u, plan), cf_split_weight(v, plan), big_n);
    if (cf_recombine(w, plan) != poly_cyclic_naive(u, v, n)) ++failures;
    ++cases;
  }
  detail = std::to_string(cases) + " triples (" + std::to_string(nondivisible) +
           " with N not dividing n), " + std::to_string(failures) + " mismatches";
  return failures == 0 && nondivisible >= 50;
}

// --- criterion 5: reference values of the smooth-order machinery ------------

bool criterion_h_values(std::string& detail) {
  bool ok = true;
  ok = ok && compute_H(36).h == BigInt(1919190);
  ok = ok && compute_H(37).h == BigInt(2);
  ok = ok && compute_H(6).h == BigInt(42);
  auto ctx = PrimeContext::create_u64(19);
  SmoothConfig cfg;
  cfg.accidental_factors = true;
  MValue m = build_M(*ctx, 6, cfg);
  ok = ok && m.m == BigInt(370440);  // 2^3 * 3^3 * 5 * 7^3
  ok = ok && m.factors.powers ==
                 std::vector<std::pair<u64, unsigned>>{{2, 3}, {3, 3}, {5, 1}, {7, 3}};
  detail = "H(36), H(37), H(6), and the 7-smooth part of 19^6-1";
  return ok;
}

// --- criterion 6: packaging postconditions on random inputs -----------------

bool criterion_packaging(std::string& detail) {
  std::mt19937_64 rng(0xACCE5506);
  int done = 0;
  u64 violations = 0;
  while (done < 100) {
    std::vector<u64> primes;
    for (u64 q = 2; q <= 41; ++q) {
      if (is_prime_u64(q) && rng() % 2 == 0) primes.push_back(q);
    }
    if (primes.size() < 4) continue;
    u64 lambda = primes.back() - 1;
    Factorization f;
    for (u64 q : primes) f.powers.emplace_back(q, 1);
    BigInt m = f.value();
    u64 s = lambda + 1 + rng() % 25;
    u64 l = s + 1 + rng() % 60;
    if (BigInt(l) >= m) continue;
    PackedLengths packed = package_lengths(f, l, s);
    ++done;
    if (!m.divisible_by(BigInt(packed.product))) ++violations;
    if (packed.product < l) ++violations;
    if (BigInt(packed.product) > BigInt::mul_u64(BigInt(l), lambda + 1)) ++violations;
    for (u64 len : packed.lengths) {
      if (len < s || BigInt(len) > BigInt(s) * BigInt(s) * BigInt(s)) ++violations;
    }
  }
  detail = "100 packings, " + std::to_string(violations) + " violations";
  return violations == 0;
}

// --- criterion 7: nested pipeline recursion ----------------------------------

bool criterion_recursion(std::string& detail) {
  auto ctx = PrimeContext::create_u64(2);
  MulConfig cfg;
  cfg.base_threshold = 64;  // lowered so the pipeline engages early
  cfg.allow_growth_nesting = true;
  cfg.max_depth = 2;
  cfg.strategy = Strategy::kCfFft;
  Multiplier mul(ctx, cfg);
  auto plan = mul.plan_for(4096);
  if (plan->kind != MulPlan::Kind::kCfFft) {
    detail = "no pipeline plan";
    return false;
  }
  std::mt19937_64 rng(0xACCE5507);
  FpPoly a = random_poly(ctx, 4096, rng);
  FpPoly b = random_poly(ctx, 4096, rng);
  bool equal = mul.cyclic_multiply(a, b, 4096) == poly_cyclic_naive(a, b, 4096);
  detail = "depth " + std::to_string(plan->depth) + ", oracle " + (equal ? "match" : "MISMATCH");
  return plan->depth >= 2 && equal;
}

// --- criterion 8 (soft trend, hard checksums): benchmark --------------------

bool criterion_benchmark(std::string& detail) {
  auto ctx = PrimeContext::create_u64(2);
  std::mt19937_64 rng(0xACCE5508);

  struct Arm {
    const char* name;
    Strategy strategy;
    std::vector<double> secs;
  };
  std::vector<Arm> arms = {{"kronecker", Strategy::kKronecker, {}},
                           {"cf-fft", Strategy::kCfFft, {}}};
  std::vector<u64> sizes;
  for (u64 n = u64{1} << 14; n <= u64{1} << 20; n *= 2) sizes.push_back(n);

  bool checksums_ok = true;
  for (u64 n : sizes) {
    FpPoly a = random_poly(ctx, n, rng);
    FpPoly b = random_poly(ctx, n, rng);
    u64 reference = 0;
    bool have_ref = false;
    for (Arm& arm : arms) {
      MulConfig cfg;
      cfg.strategy = arm.strategy;
      Multiplier mul(ctx, cfg);
      FpPoly warm = mul.multiply(a, b);  // builds the plan
      auto t0 = std::chrono::steady_clock::now();
      FpPoly c = mul.multiply(a, b);
      auto t1 = std::chrono::steady_clock::now();
      arm.secs.push_back(std::chrono::duration<double>(t1 - t0).count());
      u64 h = poly_checksum(c);
      if (have_ref && h != reference) checksums_ok = false;
      if (poly_checksum(warm) != h) checksums_ok = false;
      reference = h;
      have_ref = true;
    }
  }

  // The trend is the growth rate across the sweep: the geometric mean of
  // the per-doubling factors. Single steps can spike (cache transitions,
  // parameter jumps), so the worst step is reported as information.
  double worst_rate = 0;
  std::string trend;
  for (const Arm& arm : arms) {
    double steps = static_cast<double>(arm.secs.size() - 1);
    double rate = std::pow(arm.secs.back() / arm.secs.front(), 1.0 / steps);
    double arm_worst = 0;
    for (std::size_t i = 1; i < arm.secs.size(); ++i) {
      arm_worst = std::max(arm_worst, arm.secs[i] / arm.secs[i - 1]);
    }
    worst_rate = std::max(worst_rate, rate);
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%s %.2fx/doubling (worst step %.2fx) [", arm.name, rate,
                  arm_worst);
    trend += buf;
    for (std::size_t i = 0; i < arm.secs.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%s%.3fs", i ? " " : "", arm.secs[i]);
      trend += buf;
    }
    trend += "] ";
  }
  bool trend_ok = worst_rate <= 2.6;
  detail = trend + (trend_ok ? "(trend within 2.6x)" : "(SOFT: trend above 2.6x, reported only)") +
           (checksums_ok ? ", checksums agree" : ", CHECKSUM MISMATCH");
  // The trend is reported, not hard-failed; checksum agreement is hard.
  return checksums_ok;
}

// --- criterion 9: characteristic-2 parity guard ------------------------------

bool criterion_char2(std::string& detail) {
  auto ctx = PrimeContext::create_u64(2);
  SmoothConfig cfg;
  u64 lengths_checked = 0;
  for (u64 lambda = 2; lambda <= 64; ++lambda) {
    MValue m = build_M(*ctx, lambda, cfg);
    for (auto [q, e] : m.factors.powers) {
      if (q % 2 == 0) {
        detail = "even prime factor at lambda " + std::to_string(lambda);
        return false;
      }
    }
    u64 s = lambda * lambda;
    if (BigInt(s + 1) >= m.m) continue;
    PackedLengths packed = package_lengths(m.factors, s + 1, s);
    for (u64 len : packed.lengths) {
      ++lengths_checked;
      if (len % 2 == 0) {
        detail = "even packaged length " + std::to_string(len);
        return false;
      }
    }
  }
  // Planner-produced lengths across a size sweep.
  Multiplier mul(ctx);
  for (u64 n : {u64{40000}, u64{250000}, u64{1000000}}) {
    auto plan = mul.plan_for(n);
    if (plan->kind != MulPlan::Kind::kCfFft) continue;
    for (u64 len : plan->params.packed.lengths) {
      ++lengths_checked;
      if (len % 2 == 0) {
        detail = "even planner length " + std::to_string(len);
        return false;
      }
    }
  }
  detail = std::to_string(lengths_checked) + " packaged lengths, all odd";
  return lengths_checked > 0;
}

}  // namespace

int main() {
  run_criterion(1, "multiply equals the schoolbook oracle (1000+ cases, exact)",
                criterion_multiply);
  run_criterion(2, "mixed-radix transforms equal direct evaluation (N <= 256, all plans)",
                criterion_dft);
  run_criterion(3, "chirp transforms equal direct evaluation (both parities, n <= 128)",
                criterion_bluestein);
  run_criterion(4, "weighted-split pipeline equals the naive cyclic oracle (200 triples)",
                criterion_cf);
  run_criterion(5, "smooth-order reference values", criterion_h_values);
  run_criterion(6, "packaging postconditions on 100 random inputs", criterion_packaging);
  run_criterion(7, "nested pipeline recursion matches the oracle", criterion_recursion);
  run_criterion(8, "benchmark trend (soft) and cross-strategy checksums (hard)",
                criterion_benchmark);
  run_criterion(9, "characteristic 2 yields odd transform lengths only", criterion_char2);

  if (g_failures != 0) {
    std::printf("ACCEPTANCE: %d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("ACCEPTANCE: all criteria passed\n");
  return 0;
}
