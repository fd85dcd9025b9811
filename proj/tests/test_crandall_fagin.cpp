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

#include "crandall_fagin.hpp"

#include <random>

#include "doctest.h"
#include "test_util.hpp"

using namespace fpmul;

TEST_CASE("find_theta counterexample field: cube root of Z in degree 4 over F_2") {
  auto ctx = PrimeContext::create_u64(2);
  auto [field, theta] = find_theta(ctx, 4, 3, 12345);
  // Of the three irreducible quartics over F_2, only Z^4+Z^3+Z^2+Z+1 has
  // ord(Z) = 5 dividing (16-1)/3, i.e. admits a cube root of Z. In
  // particular Z^4+Z+1 cannot serve.
  CHECK(field->modulus() == FpPoly::from_u64(ctx, {1, 1, 1, 1, 1}));
  ExtElement cubed = ext_pow(theta, u64{3});
  CHECK(ext_equal(cubed, ExtElement::z(field)));
}

TEST_CASE("find_theta respects the p^(kappa/2) > N hypothesis") {
  auto ctx = PrimeContext::create_u64(2);
  CHECK_THROWS_AS(find_theta(ctx, 2, 5, 1), Error);  // 2^1 = 2 < 5
}

TEST_CASE("find_theta with N = 1 returns Z") {
  auto ctx = PrimeContext::create_u64(5);
  auto [field, theta] = find_theta(ctx, 3, 1, 7);
  CHECK(ext_equal(theta, ExtElement::z(field)));
}

TEST_CASE("find_theta across random shapes") {
  std::mt19937_64 rng(31);
  for (u64 p : {2ull, 3ull, 7ull, 13ull}) {
    auto ctx = PrimeContext::create_u64(p);
    for (int round = 0; round < 4; ++round) {
      std::size_t kappa = 2 + rng() % 10;
      u64 max_n = 1;
      BigInt pk = BigInt::pow(BigInt(p), kappa);
      while (BigInt(max_n + 1) * BigInt(max_n + 1) < pk && max_n < 50) ++max_n;
      u64 n = 1 + rng() % max_n;
      auto [field, theta] = find_theta(ctx, kappa, n, rng());
      ExtElement pw = ext_pow(theta, n);
      CHECK(ext_equal(pw, ExtElement::z(field)));
    }
  }
}

TEST_CASE("cf_plan split positions and residues") {
  auto ctx = PrimeContext::create_u64(3);
  auto [field, theta] = find_theta(ctx, 6, 4, 99);  // 3^3 = 27 > 4

  CfPlan plan = cf_plan(10, 4, field, theta);
  CHECK(plan.e == std::vector<u64>{0, 3, 5, 8});
  CHECK(plan.c == std::vector<u64>{0, 2, 0, 2});
  // Chunk widths alternate between floor and ceil of n/N.
  CHECK(plan.e[1] - plan.e[0] == 3);
  CHECK(plan.e[2] - plan.e[1] == 2);
  CHECK(plan.e[3] - plan.e[2] == 3);
  CHECK(plan.n - plan.e[3] == 2);

  // Weights match direct powers of theta.
  for (u64 i = 0; i < 4; ++i) {
    ExtElement want = ext_pow(plan.theta, plan.c[i]);
    CHECK(field->equal(plan.weights.elem(i), want.span()));
    ExtElement winv = ext_inv(want);
    CHECK(field->equal(plan.unweights.elem(i), winv.span()));
  }

  // Divisible case: all residues zero, all weights one.
  CfPlan even = cf_plan(8, 4, field, theta);
  CHECK(even.c == std::vector<u64>{0, 0, 0, 0});
  for (u64 i = 0; i < 4; ++i) CHECK(field->is_one(even.weights.elem(i)));

  // kappa too small for the chunk count.
  CHECK_THROWS_AS(cf_plan(100, 4, field, theta), Error);
  CHECK_THROWS_AS(cf_plan(10, 0, field, theta), Error);
  CHECK_THROWS_AS(cf_plan(4, 10, field, theta), Error);
}

TEST_CASE("delta consistency: c_i1 + c_i2 - c_i in {0, N}") {
  auto ctx = PrimeContext::create_u64(3);
  auto [field, theta] = find_theta(ctx, 8, 5, 4);
  for (u64 n : {7ull, 11ull, 13ull, 20ull}) {
    CfPlan plan = cf_plan(n, 5, field, theta);
    for (u64 i1 = 0; i1 < plan.big_n; ++i1) {
      for (u64 i2 = 0; i2 < plan.big_n; ++i2) {
        u64 lhs = plan.c[i1] + plan.c[i2];
        u64 rhs = plan.c[(i1 + i2) % plan.big_n];
        u64 diff = lhs - rhs;  // lhs >= rhs always when delta in {0, 1}
        CHECK(lhs >= rhs);
        CHECK((diff == 0 || diff == plan.big_n));
      }
    }
  }
}

TEST_CASE("cf_split_weight examples") {
  auto ctx = PrimeContext::create_u64(3);
  auto [field, theta] = find_theta(ctx, 6, 4, 99);

  CfPlan plan8 = cf_plan(8, 4, field, theta);
  FpPoly u = FpPoly::zeros(ctx, 8);
  u.set64(0, 1);
  u.set64(4, 1);  // 1 + X^4
  ExtVec split = cf_split_weight(u, plan8);
  CHECK(field->is_one(split.elem(0)));
  CHECK(field->is_zero(split.elem(1)));
  CHECK(field->is_one(split.elem(2)));
  CHECK(field->is_zero(split.elem(3)));

  ExtVec zeros = cf_split_weight(FpPoly::zeros(ctx, 8), plan8);
  for (u64 i = 0; i < 4; ++i) CHECK(field->is_zero(zeros.elem(i)));

  // n = 10: X^3 lands at the start of chunk 1, weighted by theta^(c_1).
  CfPlan plan10 = cf_plan(10, 4, field, theta);
  FpPoly x3 = FpPoly::zeros(ctx, 10);
  x3.set64(3, 1);
  ExtVec s = cf_split_weight(x3, plan10);
  CHECK(field->is_zero(s.elem(0)));
  ExtElement want = ext_pow(theta, plan10.c[1]);
  CHECK(field->equal(s.elem(1), want.span()));
  CHECK(field->is_zero(s.elem(2)));
  CHECK(field->is_zero(s.elem(3)));

  CHECK_THROWS_AS(cf_split_weight(FpPoly::zeros(ctx, 11), plan10), Error);
}

TEST_CASE("full pipeline equals the naive cyclic oracle") {
  std::mt19937_64 rng(2025);
  for (u64 p : {2ull, 3ull, 7ull}) {
    auto ctx = PrimeContext::create_u64(p);
    for (int round = 0; round < 10; ++round) {
      u64 big_n = 2 + rng() % 8;
      u64 n = big_n + rng() % 60;
      u64 chunks = (n + big_n - 1) / big_n;
      std::size_t kappa = 2 * chunks + rng() % 3;
      // Hypothesis p^(kappa/2) > N must hold; bump kappa if needed.
      while (BigInt::pow(BigInt(p), kappa) <= BigInt(big_n) * BigInt(big_n)) ++kappa;
      auto [field, theta] = find_theta(ctx, kappa, big_n, rng());
      CfPlan plan = cf_plan(n, big_n, field, theta);

      FpPoly u = test_util::random_poly(ctx, n, rng);
      FpPoly v = test_util::random_poly(ctx, n, rng);
      ExtVec uu = cf_split_weight(u, plan);
      ExtVec vv = cf_split_weight(v, plan);
      ExtVec ww = ext_cyclic_naive(field, uu, vv, big_n);
      FpPoly got = cf_recombine(ww, plan);
      CHECK(got == poly_cyclic_naive(u, v, n));
    }
  }
}

TEST_CASE("pipeline through an actual transform plan") {
  // p = 3, kappa = 6: N = 4 divides 3^6 - 1 = 728, so the length-4
  // convolution can run through DFTs.
  auto ctx = PrimeContext::create_u64(3);
  auto [field, theta] = find_theta(ctx, 6, 4, 5);
  KsBaseMultiplier ks;
  u64 primes4[] = {2};
  ExtElement w = find_root_of_order(field, 4, primes4, 77);
  auto plan4 = DftPlan::build(field, 4, {2, 2}, w, ks);

  std::mt19937_64 rng(8);
  CfPlan plan = cf_plan(10, 4, field, theta);
  for (int round = 0; round < 8; ++round) {
    FpPoly u = test_util::random_poly(ctx, 10, rng);
    FpPoly v = test_util::random_poly(ctx, 10, rng);
    ExtVec ww = plan4->cyclic_convolve(cf_split_weight(u, plan), cf_split_weight(v, plan), ks);
    CHECK(cf_recombine(ww, plan) == poly_cyclic_naive(u, v, 10));
  }

  // Identity element round trip.
  FpPoly delta = FpPoly::zeros(ctx, 10);
  delta.set64(0, 1);
  ExtVec ww = plan4->cyclic_convolve(cf_split_weight(delta, plan), cf_split_weight(delta, plan), ks);
  CHECK(cf_recombine(ww, plan) == delta);

  // All-zero convolution output recombines to zero.
  ExtVec zero = ExtVec::zeros(4, field->kappa());
  CHECK(cf_recombine(zero, plan).is_zero());
}
