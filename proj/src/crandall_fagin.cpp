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

#include <algorithm>
#include <cassert>
#include <random>

namespace fpmul {

namespace {

// Solve the two augmented systems A x = rhs1 and A y = rhs2 over F_p by
// Gaussian elimination; returns false when A is singular. A is given by
// columns; all dimensions are k.
bool solve_two(const PrimeContext& ctx, std::vector<std::vector<u64>> cols,
               std::vector<u64> rhs1, std::vector<u64> rhs2, std::vector<u64>& x,
               std::vector<u64>& y) {
  std::size_t k = cols.size();
  // Row-major augmented matrix [A | rhs1 | rhs2].
  std::vector<std::vector<u64>> m(k, std::vector<u64>(k + 2, 0));
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < k; ++i) m[i][j] = cols[j][i];
  }
  for (std::size_t i = 0; i < k; ++i) {
    m[i][k] = rhs1[i];
    m[i][k + 1] = rhs2[i];
  }
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t pivot = col;
    while (pivot < k && m[pivot][col] == 0) ++pivot;
    if (pivot == k) return false;
    std::swap(m[col], m[pivot]);
    u64 inv = ctx.inv(m[col][col]);
    for (std::size_t j = col; j < k + 2; ++j) m[col][j] = ctx.mul(m[col][j], inv);
    for (std::size_t r = 0; r < k; ++r) {
      if (r == col || m[r][col] == 0) continue;
      u64 fac = m[r][col];
      for (std::size_t j = col; j < k + 2; ++j) {
        m[r][j] = ctx.sub(m[r][j], ctx.mul(fac, m[col][j]));
      }
    }
  }
  x.resize(k);
  y.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    x[i] = m[i][k];
    y[i] = m[i][k + 1];
  }
  return true;
}

}  // namespace

std::pair<FieldPtr, ExtElement> find_theta(const CtxPtr& ctx, std::size_t kappa, u64 big_n,
                                           u64 seed) {
  if (kappa < 1) raise(ErrorCode::kParameter, "kappa must be >= 1");
  // Hypothesis p^(kappa/2) > N, checked as p^kappa > N^2.
  BigInt n2 = BigInt(big_n) * BigInt(big_n);
  if (BigInt::pow(ctx->modulus(), kappa) <= n2) {
    raise(ErrorCode::kParameter, "p^(kappa/2) > N is violated");
  }
  std::mt19937_64 rng(seed);
  FieldPtr work = ExtField::find_irreducible(ctx, kappa, rng());
  if (big_n == 1) {
    return {work, ExtElement::z(work)};  // Z itself is a first root of Z
  }

  u64 cap = 64 * static_cast<u64>(kappa) + 64;
  std::vector<u64> zeta(kappa), y(kappa), tmp(kappa);
  for (u64 trial = 0; trial < cap; ++trial) {
    for (auto& w : zeta) w = ctx->reduce(rng());
    if (work->is_zero(zeta)) continue;
    work->pow_u64(zeta, big_n, y);  // zeta^N

    // Columns 1, y, y^2, ..., y^(k-1) and the extra power y^k.
    std::vector<std::vector<u64>> cols(kappa, std::vector<u64>(kappa, 0));
    std::vector<u64> cur(kappa);
    work->set_one(cur);
    for (std::size_t j = 0; j < kappa; ++j) {
      std::copy(cur.begin(), cur.end(), cols[j].begin());
      work->mul(cur, y, tmp);
      std::swap(cur, tmp);
    }
    std::vector<u64> y_k = cur;  // y^kappa

    // Independence of the columns makes the minimal polynomial of y have
    // full degree; otherwise zeta^N sits in a proper subfield and the
    // candidate is discarded.
    std::vector<u64> minpoly_neg, theta_coords;
    if (!solve_two(*ctx, cols, y_k, zeta, minpoly_neg, theta_coords)) continue;

    // P(T) = T^kappa - sum_j minpoly_neg[j] T^j, monic of degree kappa.
    FpPoly modulus = FpPoly::zeros(ctx, kappa + 1);
    for (std::size_t j = 0; j < kappa; ++j) modulus.set64(j, ctx->neg(minpoly_neg[j]));
    modulus.set64(kappa, 1);

    FieldPtr field = ExtField::create(ctx, modulus);
    ExtElement theta = ExtElement::zero(field);
    std::copy(theta_coords.begin(), theta_coords.end(), theta.r.begin());

    // theta^N = Z must hold by construction; verify anyway.
    std::vector<u64> check(kappa), z(kappa);
    field->pow_u64(theta.span(), big_n, check);
    field->set_z(z);
    if (!field->equal(check, z)) {
      raise(ErrorCode::kInternal, "theta verification failed");
    }
    return {field, theta};
  }
  raise(ErrorCode::kSearchExhausted, "no theta found within the trial cap");
}

CfPlan cf_plan(u64 n, u64 big_n, FieldPtr field, const ExtElement& theta) {
  if (n == 0 || big_n == 0 || big_n > n) {
    raise(ErrorCode::kParameter, "need 1 <= N <= n");
  }
  std::size_t kappa = field->kappa();
  u64 chunks = (n + big_n - 1) / big_n;  // ceil(n/N)
  if (kappa < 2 * chunks) {
    raise(ErrorCode::kParameter, "kappa must be at least 2*ceil(n/N)");
  }

  CfPlan plan;
  plan.n = n;
  plan.big_n = big_n;
  plan.field = field;
  plan.theta = theta;

  // theta^N = Z, always.
  {
    std::vector<u64> check(kappa), z(kappa);
    field->pow_u64(theta.span(), big_n, check);
    field->set_z(z);
    if (!field->equal(check, z)) raise(ErrorCode::kParameter, "theta^N != Z");
  }

  plan.e.resize(big_n);
  plan.c.resize(big_n);
  for (u64 i = 0; i < big_n; ++i) {
    u128 num = static_cast<u128>(n) * i;
    u64 ei = static_cast<u64>((num + big_n - 1) / big_n);
    plan.e[i] = ei;
    plan.c[i] = static_cast<u64>(static_cast<u128>(big_n) * ei - num);
    assert(plan.c[i] < big_n);
  }
  // Chunk widths take only two values.
  for (u64 i = 0; i + 1 < big_n; ++i) {
    u64 w = plan.e[i + 1] - plan.e[i];
    assert(w == n / big_n || w == (n + big_n - 1) / big_n);
    (void)w;
  }

  // Weight tables by the incremental scheme: the c-increment is either
  // d_up = N*ceil(n/N) - n or d_dn = N*floor(n/N) - n (<= 0), so one
  // multiplication per step suffices in each table.
  u64 d_up = big_n * chunks - n;           // >= 0
  u64 d_dn_abs = n - big_n * (n / big_n);  // -d_dn >= 0
  ExtElement theta_inv = ext_inv(theta);   // equals theta^(N-1) * Z^(-1)
  ExtElement up_w = ext_pow(theta, d_up);
  ExtElement dn_w = ext_pow(theta_inv, d_dn_abs);
  ExtElement up_u = ext_pow(theta_inv, d_up);
  ExtElement dn_u = ext_pow(theta, d_dn_abs);

  plan.weights = ExtVec::zeros(big_n, kappa);
  plan.unweights = ExtVec::zeros(big_n, kappa);
  field->set_one(plan.weights.elem(0));
  field->set_one(plan.unweights.elem(0));
  for (u64 i = 1; i < big_n; ++i) {
    bool up = plan.c[i] >= plan.c[i - 1];
    const ExtElement& w_step = up ? up_w : dn_w;
    const ExtElement& u_step = up ? up_u : dn_u;
    field->mul(plan.weights.elem(i - 1), w_step.span(), plan.weights.elem(i));
    field->mul(plan.unweights.elem(i - 1), u_step.span(), plan.unweights.elem(i));
  }

  // Weight and unweight tables are pointwise inverses.
  std::vector<u64> probe(kappa);
  for (u64 i = 0; i < big_n; ++i) {
    field->mul(plan.weights.elem(i), plan.unweights.elem(i), probe);
    if (!field->is_one(probe)) raise(ErrorCode::kInternal, "weight table inconsistency");
  }
  return plan;
}

ExtVec cf_split_weight(const FpPoly& u, const CfPlan& plan) {
  if (u.length() > plan.n) raise(ErrorCode::kLengthMismatch, "input longer than n");
  const FieldPtr& field = plan.field;
  std::size_t kappa = field->kappa();
  ExtVec out = ExtVec::zeros(plan.big_n, kappa);
  std::vector<u64> chunk(kappa);
  for (u64 i = 0; i < plan.big_n; ++i) {
    u64 lo = plan.e[i];
    u64 hi = i + 1 < plan.big_n ? plan.e[i + 1] : plan.n;
    std::fill(chunk.begin(), chunk.end(), 0);
    for (u64 j = lo; j < hi && j < u.length(); ++j) chunk[j - lo] = u.get64(j);
    field->mul(chunk, plan.weights.elem(i), out.elem(i));
  }
  return out;
}

FpPoly cf_recombine(const ExtVec& w, const CfPlan& plan) {
  if (w.len != plan.big_n) raise(ErrorCode::kLengthMismatch, "expected N elements");
  const FieldPtr& field = plan.field;
  const CtxPtr& ctx = field->context();
  std::size_t kappa = field->kappa();
  FpPoly out = FpPoly::zeros(ctx, plan.n);
  std::vector<u64> piece(kappa);
  for (u64 i = 0; i < plan.big_n; ++i) {
    field->mul(w.elem(i), plan.unweights.elem(i), piece);
    u64 base = plan.e[i];
    for (std::size_t j = 0; j < kappa; ++j) {
      if (piece[j] == 0) continue;
      u64 idx = (base + j) % plan.n;
      out.set64(idx, ctx->add(out.get64(idx), piece[j]));
    }
  }
  return out;
}

}  // namespace fpmul
