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

#include "dft.hpp"

#include <algorithm>
#include <cassert>

namespace fpmul {

namespace {

// Powers 1, w, ..., w^(n-1).
ExtVec root_powers(const FieldPtr& field, const ExtElement& w, u64 n) {
  ExtVec out = ExtVec::zeros(n, field->kappa());
  field->set_one(out.elem(0));
  for (u64 j = 1; j < n; ++j) field->mul(out.elem(j - 1), w.span(), out.elem(j));
  return out;
}

std::vector<u64> trial_factor_primes(u64 n) {
  std::vector<u64> primes;
  u64 rem = n;
  for (u64 q = 2; q * q <= rem; ++q) {
    if (rem % q == 0) {
      primes.push_back(q);
      while (rem % q == 0) rem /= q;
    }
  }
  if (rem > 1) primes.push_back(rem);
  return primes;
}

void verify_root_order(const FieldPtr& field, const ExtElement& w, u64 n) {
  std::vector<u64> tmp(field->kappa());
  field->pow_u64(w.span(), n, tmp);
  if (!field->is_one(tmp)) raise(ErrorCode::kParameter, "root order check failed: w^n != 1");
  for (u64 s : trial_factor_primes(n)) {
    field->pow_u64(w.span(), n / s, tmp);
    if (field->is_one(tmp)) raise(ErrorCode::kParameter, "root order check failed: order < n");
  }
}

}  // namespace

ExtVec dft_direct(const FieldPtr& field, const ExtVec& a, const ExtElement& omega) {
  u64 n = a.len;
  if (n == 0) raise(ErrorCode::kParameter, "empty input");
  std::vector<u64> wn(field->kappa());
  field->pow_u64(omega.span(), n, wn);
  if (!field->is_one(wn)) raise(ErrorCode::kLengthMismatch, "omega^n != 1: order mismatch");

  ExtVec out = ExtVec::zeros(n, field->kappa());
  std::vector<u64> point(field->kappa()), acc(field->kappa()), tmp(field->kappa());
  field->set_one(point);  // omega^i
  for (u64 i = 0; i < n; ++i) {
    // Horner at omega^i.
    std::copy(a.elem(n - 1).begin(), a.elem(n - 1).end(), acc.begin());
    for (u64 k = n - 1; k-- > 0;) {
      field->mul(acc, point, tmp);
      field->add(tmp, a.elem(k), acc);
    }
    std::copy(acc.begin(), acc.end(), out.elem(i).begin());
    if (i + 1 < n) field->mul(point, omega.span(), point);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Short transforms
// ---------------------------------------------------------------------------

ShortPlan bluestein_plan(const FieldPtr& field, const ExtElement& omega, u64 n,
                         const PolyMultiplier& mul, const DftConfig& cfg) {
  if (n == 0) raise(ErrorCode::kParameter, "transform length must be positive");
  ShortPlan plan;
  plan.n = n;
  plan.root = omega;
  if (n <= cfg.direct_leaf_max) {
    plan.direct = true;
    plan.root_pows = root_powers(field, omega, n);
    return plan;
  }
  plan.direct = false;
  plan.even = (n % 2 == 0);
  std::size_t kappa = field->kappa();
  ExtVec roots = root_powers(field, omega, n);
  plan.f = ExtVec::zeros(n, kappa);
  plan.f_prime = ExtVec::zeros(n, kappa);
  ExtVec g = ExtVec::zeros(n, kappa);

  auto root_at = [&](u64 e) { return roots.elem(e % n); };

  if (!plan.even) {
    // Exponents (i^2-i)/2 and (i^2+i)/2 advance by i-1 and i.
    u64 e = 0, ep = 0;
    for (u64 i = 0; i < n; ++i) {
      if (i > 0) {
        e = (e + i - 1) % n;
        ep = (ep + i) % n;
      }
      std::copy(root_at(e).begin(), root_at(e).end(), plan.f.elem(i).begin());
      std::copy(root_at(ep).begin(), root_at(ep).end(), plan.f_prime.elem(i).begin());
      std::copy(root_at((n - ep) % n).begin(), root_at((n - ep) % n).end(), g.elem(i).begin());
    }
  } else {
    if (field->context()->p64() == 2) {
      raise(ErrorCode::kParameter, "even-length chirp transform needs 2 invertible");
    }
    // w^(n/2) must be -1.
    std::vector<u64> half_pow(kappa), minus_one(kappa);
    field->pow_u64(omega.span(), n / 2, half_pow);
    field->set_one(minus_one);
    std::vector<u64> zero(kappa, 0);
    field->sub(zero, minus_one, minus_one);
    if (!field->equal(half_pow, minus_one)) {
      raise(ErrorCode::kParameter, "even-length chirp transform needs w^(n/2) = -1");
    }
    plan.sigma_negative = ((n / 2) % 2 == 1);  // sigma = (-1)^(n/2)
    ExtElement two = ExtElement::from_poly(field, FpPoly::constant(field->context(), 2));
    plan.half = ext_inv(two);
    // Exponents i^2 and i^2+i advance by 2i-1 and 2i.
    u64 e = 0, ep = 0;
    for (u64 i = 0; i < n; ++i) {
      if (i > 0) {
        e = (e + 2 * i - 1) % n;
        ep = (ep + 2 * i) % n;
      }
      std::copy(root_at(e).begin(), root_at(e).end(), plan.f.elem(i).begin());
      std::copy(root_at(ep).begin(), root_at(ep).end(), plan.f_prime.elem(i).begin());
      field->add(root_at((n - e) % n), root_at((n - ep) % n), g.elem(i));
    }
  }

  plan.use_recursion = n > cfg.bluestein_naive_floor;
  if (plan.use_recursion) {
    plan.g_prepared = ext_cyclic_prepare(field, g, n, mul);
  }
  plan.g_vec = std::move(g);
  return plan;
}

void short_dft(const ShortPlan& plan, const FieldPtr& field, const PolyMultiplier& mul,
               std::span<u64> data) {
  u64 n = plan.n;
  std::size_t kappa = field->kappa();
  auto elem = [&](std::span<u64> v, u64 i) { return v.subspan(i * kappa, kappa); };
  auto celem = [&](std::span<const u64> v, u64 i) { return v.subspan(i * kappa, kappa); };

  if (plan.direct) {
    if (n == 1) return;
    std::vector<u64> out(n * kappa), acc(kappa), tmp(kappa);
    for (u64 i = 0; i < n; ++i) {
      field->set_zero(acc);
      for (u64 k = 0; k < n; ++k) {
        field->mul(celem(data, k), plan.root_pows.elem((i * k) % n), tmp);
        field->add(acc, tmp, acc);
      }
      std::copy(acc.begin(), acc.end(), elem(out, i).begin());
    }
    std::copy(out.begin(), out.end(), data.begin());
    return;
  }

  // Weight the input.
  ExtVec F = ExtVec::zeros(n, kappa);
  for (u64 i = 0; i < n; ++i) field->mul(celem(data, i), plan.f.elem(i), F.elem(i));

  // Convolve with the fixed operand.
  ExtVec c;
  if (plan.use_recursion) {
    c = ext_cyclic_multiply(field, F, plan.g_vec, n, mul, plan.g_prepared.get());
  } else {
    c = ext_cyclic_naive(field, F, plan.g_vec, n);
  }

  if (!plan.even) {
    for (u64 i = 0; i < n; ++i) field->mul(c.elem(i), plan.f_prime.elem(i), elem(data, i));
    return;
  }
  // Even case: recombine the two interleaved output sequences.
  std::vector<u64> sum(kappa), diff(kappa), tmp(kappa);
  for (u64 i = 0; i < n / 2; ++i) {
    auto ci = c.elem(i);
    auto cj = c.elem(i + n / 2);
    if (plan.sigma_negative) {
      field->sub(ci, cj, sum);   // c_i + sigma c_j
      field->add(ci, cj, diff);  // c_i - sigma c_j
    } else {
      field->add(ci, cj, sum);
      field->sub(ci, cj, diff);
    }
    field->mul(sum, plan.f.elem(i), tmp);
    field->mul(tmp, plan.half.span(), elem(data, 2 * i));
    field->mul(diff, plan.f_prime.elem(i), tmp);
    field->mul(tmp, plan.half.span(), elem(data, 2 * i + 1));
  }
}

ExtVec bluestein(const FieldPtr& field, const ExtElement& omega, u64 n, const ExtVec& a,
                 const PolyMultiplier& mul, const DftConfig& cfg) {
  if (a.len != n) raise(ErrorCode::kLengthMismatch, "input length != n");
  verify_root_order(field, omega, n);
  DftConfig forced = cfg;
  forced.direct_leaf_max = 0;  // exercise the chirp path even for tiny n
  ShortPlan plan = bluestein_plan(field, omega, n, mul, forced);
  ExtVec out = a;
  short_dft(plan, field, mul, out.w);
  return out;
}

// ---------------------------------------------------------------------------
// Mixed-radix plans
// ---------------------------------------------------------------------------

std::shared_ptr<const DftPlan> DftPlan::build(FieldPtr field, u64 n, std::vector<u64> factors,
                                              ExtElement omega, const PolyMultiplier& mul,
                                              const DftConfig& cfg) {
  if (n == 0) raise(ErrorCode::kParameter, "transform length must be positive");
  u64 prod = 1;
  for (u64 f : factors) {
    if (f == 0) raise(ErrorCode::kParameter, "zero factor");
    prod *= f;
  }
  if (factors.empty()) {
    if (n != 1) raise(ErrorCode::kParameter, "factor product mismatch");
  } else if (prod != n) {
    raise(ErrorCode::kParameter, "factor product mismatch");
  }
  // Drop unit factors; they contribute nothing.
  std::erase(factors, u64{1});

  verify_root_order(field, omega, n);

  auto plan = std::shared_ptr<DftPlan>(new DftPlan());
  plan->field_ = field;
  plan->n_ = n;
  plan->factors_ = std::move(factors);
  plan->level_len_.resize(plan->factors_.size());
  u64 m = 1;
  for (std::size_t k = 0; k < plan->factors_.size(); ++k) {
    m *= plan->factors_[k];
    plan->level_len_[k] = m;
  }
  plan->omega_ = omega;
  ExtElement winv = ExtElement::zero(field);
  field->inv(omega.span(), winv.span_mut());
  plan->omega_inv_ = winv;

  u64 n_mod_p = n % field->context()->p64();
  if (n_mod_p == 0) raise(ErrorCode::kParameter, "transform length not invertible in the field");
  ExtElement inv_n =
      ExtElement::from_poly(field, FpPoly::constant(field->context(), field->context()->inv(n_mod_p)));
  plan->inv_n_ = inv_n;

  plan->build_direction(plan->fwd_, plan->omega_, mul, cfg);
  plan->build_direction(plan->bwd_, plan->omega_inv_, mul, cfg);
  return plan;
}

void DftPlan::build_direction(Direction& dir, const ExtElement& w, const PolyMultiplier& mul,
                              const DftConfig& cfg) {
  dir.roots = root_powers(field_, w, n_);
  std::size_t d = factors_.size();

  // Twiddle tables, one per level above the innermost.
  dir.twiddles.resize(d);
  for (std::size_t k = 1; k < d; ++k) {
    u64 m = level_len_[k];
    u64 a = level_len_[k - 1];
    u64 b = factors_[k];
    u64 stage_step = n_ / m;  // w^stage_step has order m
    ExtVec table = ExtVec::zeros(m, field_->kappa());
    for (u64 k1 = 0; k1 < a; ++k1) {
      for (u64 i2 = 0; i2 < b; ++i2) {
        u64 cross = static_cast<u64>(static_cast<u128>(k1) * i2 % m);
        u64 exp = static_cast<u64>(static_cast<u128>(stage_step) * cross % n_);
        auto src = dir.roots.elem(exp);
        std::copy(src.begin(), src.end(), table.elem(k1 * b + i2).begin());
      }
    }
    dir.twiddles[k] = std::move(table);
  }

  // One short plan per distinct factor value (equal factors share a root).
  dir.leaf.resize(d);
  for (std::size_t k = 0; k < d; ++k) {
    u64 b = factors_[k];
    std::size_t found = dir.shorts.size();
    for (std::size_t j = 0; j < dir.shorts.size(); ++j) {
      if (dir.shorts[j].n == b) {
        found = j;
        break;
      }
    }
    if (found == dir.shorts.size()) {
      ExtElement leaf_root = ExtElement::zero(field_);
      field_->pow_u64(w.span(), n_ / b, leaf_root.span_mut());
      leaf_root.field = field_;
      dir.shorts.push_back(bluestein_plan(field_, leaf_root, b, mul, cfg));
    }
    dir.leaf[k] = found;
  }
}

void DftPlan::exec_level(const Direction& dir, std::size_t level, std::span<u64> data,
                         std::span<u64> scratch, const PolyMultiplier& mul) const {
  std::size_t kappa = field_->kappa();
  const ShortPlan& leaf = dir.shorts[dir.leaf[level]];
  if (level == 0) {
    short_dft(leaf, field_, mul, data);
    return;
  }
  u64 a = level_len_[level - 1];
  u64 b = factors_[level];

  // Inner transforms down the strided columns.
  std::vector<u64> col(b * kappa);
  for (u64 k1 = 0; k1 < a; ++k1) {
    for (u64 j = 0; j < b; ++j) {
      std::copy_n(data.begin() + static_cast<std::ptrdiff_t>((j * a + k1) * kappa), kappa,
                  col.begin() + static_cast<std::ptrdiff_t>(j * kappa));
    }
    short_dft(leaf, field_, mul, col);
    for (u64 j = 0; j < b; ++j) {
      std::copy_n(col.begin() + static_cast<std::ptrdiff_t>(j * kappa), kappa,
                  data.begin() + static_cast<std::ptrdiff_t>((j * a + k1) * kappa));
    }
  }

  // Twiddles (row k1 = 0 and column i2 = 0 are ones).
  const ExtVec& tw = dir.twiddles[level];
  for (u64 k1 = 1; k1 < a; ++k1) {
    for (u64 i2 = 1; i2 < b; ++i2) {
      auto cell = data.subspan((i2 * a + k1) * kappa, kappa);
      field_->mul(cell, tw.elem(k1 * b + i2), cell);
    }
  }

  // Outer transforms on contiguous rows.
  for (u64 i2 = 0; i2 < b; ++i2) {
    exec_level(dir, level - 1, data.subspan(i2 * a * kappa, a * kappa), scratch, mul);
  }

  // Reorder: out[i1 * b + i2] = row_i2[i1].
  u64 m = level_len_[level];
  for (u64 i2 = 0; i2 < b; ++i2) {
    for (u64 i1 = 0; i1 < a; ++i1) {
      std::copy_n(data.begin() + static_cast<std::ptrdiff_t>((i2 * a + i1) * kappa), kappa,
                  scratch.begin() + static_cast<std::ptrdiff_t>((i1 * b + i2) * kappa));
    }
  }
  std::copy_n(scratch.begin(), m * kappa, data.begin());
}

void DftPlan::execute(const Direction& dir, std::span<u64> data, std::span<u64> scratch,
                      const PolyMultiplier& mul) const {
  if (factors_.empty()) return;  // length 1
  exec_level(dir, factors_.size() - 1, data, scratch, mul);
}

ExtVec DftPlan::dft(const ExtVec& a, const PolyMultiplier& mul) const {
  if (a.len != n_) raise(ErrorCode::kLengthMismatch, "input length != N");
  ExtVec out = a;
  std::vector<u64> scratch(n_ * field_->kappa());
  execute(fwd_, out.w, scratch, mul);
  return out;
}

ExtVec DftPlan::idft(const ExtVec& a_hat, const PolyMultiplier& mul) const {
  if (a_hat.len != n_) raise(ErrorCode::kLengthMismatch, "input length != N");
  ExtVec out = a_hat;
  std::vector<u64> scratch(n_ * field_->kappa());
  execute(bwd_, out.w, scratch, mul);
  for (u64 i = 0; i < n_; ++i) {
    field_->mul(out.elem(i), inv_n_.span(), out.elem(i));
  }
  return out;
}

ExtVec DftPlan::cyclic_convolve(const ExtVec& a, const ExtVec& b, const PolyMultiplier& mul) const {
  Transformed bt = transform_fixed(b, mul);
  return cyclic_convolve_fixed(a, bt, mul);
}

DftPlan::Transformed DftPlan::transform_fixed(const ExtVec& b, const PolyMultiplier& mul) const {
  return Transformed{dft(b, mul)};
}

ExtVec DftPlan::cyclic_convolve_fixed(const ExtVec& a, const Transformed& b_hat,
                                      const PolyMultiplier& mul) const {
  ExtVec a_hat = dft(a, mul);
  for (u64 i = 0; i < n_; ++i) {
    field_->mul(a_hat.elem(i), b_hat.hat.elem(i), a_hat.elem(i));
  }
  return idft(a_hat, mul);
}

}  // namespace fpmul
