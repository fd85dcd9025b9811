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

#include "multiplier.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace fpmul {

namespace {

struct PreparedKronecker {
  PackedInteger packed;  // slots == 0 encodes a zero operand
  u64 n = 0;
};

struct PreparedCf {
  DftPlan::Transformed v_hat;
};

// A fixed operand bound to the plan it was prepared under.
struct BoundPrepared {
  MulPlanPtr plan;
  std::shared_ptr<const void> inner;
};

/// Routes the inner cyclic products of a pipeline level to the child plans
/// chosen at planning time. Acyclic products fall back to integer packing
/// (they only occur outside the transform path).
class InnerMultiplier final : public PolyMultiplier {
 public:
  explicit InnerMultiplier(std::map<u64, MulPlanPtr> by_length) : by_length_(std::move(by_length)) {}

  FpPoly multiply(const FpPoly& a, const FpPoly& b) const override { return ks_multiply(a, b); }

  FpPoly cyclic_multiply(const FpPoly& a, const FpPoly& b, std::size_t n) const override {
    return mul_plan_cyclic(*plan(n), a, b);
  }

  std::shared_ptr<const void> prepare_cyclic_fixed(const FpPoly& v, std::size_t n) const override {
    auto bound = std::make_shared<BoundPrepared>();
    bound->plan = plan(n);
    bound->inner = mul_plan_prepare(*bound->plan, v);
    return bound;
  }

  FpPoly cyclic_multiply_prepared(const FpPoly& u, std::size_t n,
                                  const void* prepared) const override {
    const auto* bound = static_cast<const BoundPrepared*>(prepared);
    (void)n;
    return mul_plan_cyclic_prepared(*bound->plan, u, bound->inner.get());
  }

 private:
  const MulPlanPtr& plan(u64 n) const {
    auto it = by_length_.find(n);
    if (it == by_length_.end()) {
      raise(ErrorCode::kInternal, "no child plan for inner length " + std::to_string(n));
    }
    return it->second;
  }

  std::map<u64, MulPlanPtr> by_length_;
};

FpPoly exec_kronecker_cyclic(const FpPoly& a, const FpPoly& b, u64 n) {
  if (a.length() > n || b.length() > n) {
    raise(ErrorCode::kLengthMismatch, "cyclic operands longer than n");
  }
  return poly_fold_cyclic(ks_multiply(a, b), n).resized(n);
}

FpPoly exec_cf_cyclic(const MulPlan& plan, const FpPoly& a, const FpPoly& b) {
  ExtVec ua = cf_split_weight(a, plan.cf);
  ExtVec ub = cf_split_weight(b, plan.cf);
  ExtVec w = plan.transform->cyclic_convolve(ua, ub, *plan.inner_mul);
  return cf_recombine(w, plan.cf);
}

}  // namespace

FpPoly mul_plan_cyclic(const MulPlan& plan, const FpPoly& a, const FpPoly& b) {
  require_same_context(a, b);
  if (plan.kind == MulPlan::Kind::kKroneckerBase) return exec_kronecker_cyclic(a, b, plan.n);
  return exec_cf_cyclic(plan, a, b);
}

std::shared_ptr<const void> mul_plan_prepare(const MulPlan& plan, const FpPoly& v) {
  if (plan.kind == MulPlan::Kind::kKroneckerBase) {
    auto prep = std::make_shared<PreparedKronecker>();
    prep->n = plan.n;
    FpPoly vt = v.trimmed();
    if (vt.length() != 0) prep->packed = ks_pack(vt, ks_slot_bits(*v.context(), plan.n));
    return prep;
  }
  auto prep = std::make_shared<PreparedCf>();
  prep->v_hat = plan.transform->transform_fixed(cf_split_weight(v, plan.cf), *plan.inner_mul);
  return prep;
}

FpPoly mul_plan_cyclic_prepared(const MulPlan& plan, const FpPoly& u, const void* prepared) {
  if (plan.kind == MulPlan::Kind::kKroneckerBase) {
    const auto* prep = static_cast<const PreparedKronecker*>(prepared);
    FpPoly ut = u.trimmed();
    if (ut.length() == 0 || prep->packed.slots == 0) return FpPoly::zeros(u.context(), plan.n);
    PackedInteger pu = ks_pack(ut, prep->packed.slot_bits);
    FpPoly full = ks_unpack(u.context(), pu.value * prep->packed.value, prep->packed.slot_bits,
                            ut.length() + prep->packed.slots - 1);
    return poly_fold_cyclic(full, plan.n).resized(plan.n);
  }
  const auto* prep = static_cast<const PreparedCf*>(prepared);
  ExtVec uu = cf_split_weight(u, plan.cf);
  ExtVec w = plan.transform->cyclic_convolve_fixed(uu, prep->v_hat, *plan.inner_mul);
  return cf_recombine(w, plan.cf);
}

// ---------------------------------------------------------------------------
// Planning
// ---------------------------------------------------------------------------

Multiplier::Multiplier(CtxPtr ctx, MulConfig cfg) : ctx_(std::move(ctx)), cfg_(cfg) {}

MulPlanPtr Multiplier::plan_for(u64 n) const {
  if (n == 0) raise(ErrorCode::kParameter, "cyclic length must be positive");
  std::pair<u64, int> key{n, static_cast<int>(cfg_.strategy)};
  {
    std::lock_guard lock(mu_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  MulPlanPtr plan = plan_recursive(n, 0, cfg_.strategy, /*allow_pad=*/false);
  std::lock_guard lock(mu_);
  cache_.emplace(key, plan);
  return plan;
}

MulPlanPtr Multiplier::plan_for_multiply(u64 n) const {
  if (n == 0) raise(ErrorCode::kParameter, "length must be positive");
  std::pair<u64, int> key{n, 16 + static_cast<int>(cfg_.strategy)};
  {
    std::lock_guard lock(mu_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  MulPlanPtr plan = plan_recursive(n, 0, cfg_.strategy, /*allow_pad=*/true);
  std::lock_guard lock(mu_);
  cache_.emplace(key, plan);
  return plan;
}

MulPlanPtr Multiplier::plan_recursive(u64 n, unsigned depth, Strategy strategy,
                                      bool allow_pad) const {
  auto base = [&](std::string note) {
    auto plan = std::make_shared<MulPlan>();
    plan->n = n;
    plan->kind = MulPlan::Kind::kKroneckerBase;
    plan->depth = 0;
    plan->note = std::move(note);
    return plan;
  };

  if (strategy == Strategy::kKronecker) return base("");
  if (strategy == Strategy::kAuto) {
    if (n <= cfg_.base_threshold) return base("");
    // The pipeline region starts above p^2; below it, packing wins.
    if (BigInt(n) <= ctx_->modulus() * ctx_->modulus()) return base("");
  }
  if (depth >= cfg_.max_depth) return base("");

  std::string why_not;
  MulPlanPtr cf = plan_cf(n, depth, allow_pad, &why_not);
  if (cf != nullptr) return cf;
  if (strategy == Strategy::kCfFft) return base("fallback: " + why_not);
  return base("");
}

MulPlanPtr Multiplier::plan_cf(u64 n, unsigned depth, bool allow_pad, std::string* why_not) const {
  const BigInt& p = ctx_->modulus();
  if (!ctx_->single_word()) {
    *why_not = "pipeline needs a single-word prime";
    return nullptr;
  }
  if (n < 2) {
    *why_not = "length too small";
    return nullptr;
  }

  SmoothConfig scfg;
  scfg.target_multiple = cfg_.target_multiple;
  scfg.lambda_max = cfg_.lambda_max;
  scfg.accidental_factors = cfg_.accidental_factors;
  BigInt goal = BigInt::mul_u64(BigInt(n), cfg_.target_multiple);

  *why_not = "no workable lambda below the configured maximum";
  for (u64 lambda = 2; lambda <= cfg_.lambda_max; ++lambda) {
    MValue m = build_M(*ctx_, lambda, scfg);
    if (m.m < goal) continue;

    u64 s_target = lambda * lambda;
    u64 lam3 = lambda * lambda * lambda;
    u64 l_target = std::max<u64>(s_target + 1, (n + lam3 - 1) / lam3);
    if (!(BigInt(l_target) < m.m)) continue;

    PackedLengths packed;
    try {
      packed = package_lengths(m.factors, l_target, s_target);
    } catch (const Error&) {
      continue;
    }
    // Packaged-length postconditions; prime-power atoms can break them, in
    // which case a larger lambda is tried.
    if (BigInt(packed.product) > BigInt::mul_u64(BigInt(l_target), lambda + 1)) continue;
    bool lengths_ok = true;
    for (u64 len : packed.lengths) {
      BigInt s3 = BigInt(s_target) * BigInt(s_target) * BigInt(s_target);
      if (len < s_target || BigInt(len) > s3) {
        lengths_ok = false;
        break;
      }
    }
    if (!lengths_ok) continue;

    u64 big_n = packed.product;
    // The weighted split needs N <= n; a full product may round its cyclic
    // length up to fit, a fixed-length cyclic product may not.
    u64 n_eff = n;
    if (big_n > n) {
      if (!allow_pad) continue;
      n_eff = big_n;
    }

    u64 chunks = (n_eff + big_n - 1) / big_n;
    u64 kappa = (2 * chunks + lambda - 1) / lambda * lambda;  // lambda | kappa
    assert(kappa >= 2 * chunks);
    if (BigInt::pow(p, kappa) <= BigInt(big_n) * BigInt(big_n)) continue;  // p^(k/2) > N

    // N | p^kappa - 1 must hold since N | p^lambda - 1 and lambda | kappa.
    BigInt group = BigInt::pow(p, kappa) - BigInt(1);
    if (!group.divisible_by(BigInt(big_n))) {
      raise(ErrorCode::kInternal, "transform length does not divide the group order");
    }

    // Children for the inner lengths 2 * N_i * kappa.
    std::vector<u64> inner;
    inner.reserve(packed.lengths.size());
    bool all_shrink = true;
    for (u64 len : packed.lengths) {
      u64 ni = 2 * len * kappa;
      inner.push_back(ni);
      if (ni >= n_eff) all_shrink = false;
    }
    std::map<u64, MulPlanPtr> children_by_len;
    std::vector<MulPlanPtr> children;
    unsigned child_depth_max = 0;
    for (u64 ni : inner) {
      MulPlanPtr child;
      if (auto it = children_by_len.find(ni); it != children_by_len.end()) {
        child = it->second;
      } else {
        // Nested pipeline levels require strictly shrinking lengths unless
        // growth nesting is enabled; either way the depth cap bounds the
        // recursion.
        bool may_recurse = all_shrink || cfg_.allow_growth_nesting;
        child = may_recurse ? plan_recursive(ni, depth + 1, Strategy::kAuto, false)
                            : plan_recursive(ni, cfg_.max_depth, Strategy::kAuto, false);
        children_by_len.emplace(ni, child);
      }
      children.push_back(child);
      child_depth_max = std::max(child_depth_max, child->depth);
    }

    auto plan = std::make_shared<MulPlan>();
    plan->n = n_eff;
    plan->kind = MulPlan::Kind::kCfFft;
    plan->depth = 1 + child_depth_max;
    plan->params.lambda = lambda;
    plan->params.m = m.m;
    plan->params.m_factors = m.factors;
    plan->params.packed = packed;
    plan->params.smooth_bound = lambda + 1;
    plan->kappa = kappa;
    plan->inner_lengths = std::move(inner);
    plan->children = std::move(children);
    plan->inner_mul = std::make_shared<InnerMultiplier>(std::move(children_by_len));

    try {
      auto [field, theta] =
          find_theta(ctx_, kappa, big_n, cfg_.seed ^ (n_eff * 0x9e3779b97f4a7c15ull));
      plan->field = field;
      plan->cf = cf_plan(n_eff, big_n, field, theta);

      Factorization n_fact;
      for (const auto& f : packed.factors) n_fact.merge(f);
      std::vector<u64> n_primes = n_fact.distinct_primes();
      ExtElement omega =
          find_root_of_order(field, big_n, n_primes, cfg_.seed ^ (big_n * 0xda942042e4dd58b5ull));

      DftConfig dcfg;
      dcfg.direct_leaf_max = cfg_.direct_leaf_max;
      dcfg.bluestein_naive_floor = cfg_.bluestein_naive_floor;
      plan->transform =
          DftPlan::build(field, big_n, packed.lengths, omega, *plan->inner_mul, dcfg);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kInternal) throw;
      // Construction failure (e.g. an exhausted randomized search): try the
      // next lambda.
      *why_not = e.what();
      continue;
    }
    return plan;
  }
  return nullptr;
}

// ---------------------------------------------------------------------------
// Public API
// ---------------------------------------------------------------------------

FpPoly Multiplier::multiply(const FpPoly& a, const FpPoly& b) const {
  require_same_context(a, b);
  auto da = a.degree(), db = b.degree();
  if (!da || !db) return FpPoly::zeros(a.context(), 0);
  u64 out_len = *da + *db + 1;
  MulPlanPtr plan = plan_for_multiply(out_len);
  if (plan->kind == MulPlan::Kind::kKroneckerBase) {
    return ks_multiply(a, b);
  }
  // Zero-padding to the plan's cyclic length makes the product exact.
  FpPoly c = mul_plan_cyclic(*plan, a.trimmed(), b.trimmed());
  return c.resized(out_len);
}

FpPoly Multiplier::cyclic_multiply(const FpPoly& a, const FpPoly& b, std::size_t n) const {
  require_same_context(a, b);
  if (n == 0) raise(ErrorCode::kParameter, "cyclic length must be positive");
  if (a.length() > n || b.length() > n) {
    raise(ErrorCode::kLengthMismatch, "cyclic operands longer than n");
  }
  return mul_plan_cyclic(*plan_for(n), a, b);
}

std::shared_ptr<const void> Multiplier::prepare_cyclic_fixed(const FpPoly& v,
                                                             std::size_t n) const {
  struct Holder {
    MulPlanPtr plan;
    std::shared_ptr<const void> inner;
  };
  auto h = std::make_shared<Holder>();
  h->plan = plan_for(n);
  h->inner = mul_plan_prepare(*h->plan, v);
  return h;
}

FpPoly Multiplier::cyclic_multiply_prepared(const FpPoly& u, std::size_t n,
                                            const void* prepared) const {
  struct Holder {
    MulPlanPtr plan;
    std::shared_ptr<const void> inner;
  };
  const auto* h = static_cast<const Holder*>(prepared);
  if (h->plan->n != n) raise(ErrorCode::kLengthMismatch, "prepared operand for a different n");
  return mul_plan_cyclic_prepared(*h->plan, u, h->inner.get());
}

std::vector<FpPoly> Multiplier::cyclic_multiply_batch(std::span<const FpPoly> us, const FpPoly& v,
                                                      std::size_t n) const {
  std::vector<FpPoly> out;
  if (us.empty()) return out;
  auto prep = prepare_cyclic_fixed(v, n);
  out.reserve(us.size());
  for (const FpPoly& u : us) {
    if (u.length() > n || v.length() > n) {
      raise(ErrorCode::kLengthMismatch, "cyclic operands longer than n");
    }
    out.push_back(cyclic_multiply_prepared(u, n, prep.get()));
  }
  return out;
}

std::string describe_plan(const MulPlan& plan, const PrimeContext& ctx) {
  std::ostringstream os;
  std::string indent;
  const MulPlan* cur = &plan;
  while (true) {
    if (cur->kind == MulPlan::Kind::kKroneckerBase) {
      os << indent << "strategy: kronecker-base (n = " << cur->n;
      if (BigInt(cur->n) <= ctx.modulus() * ctx.modulus()) os << ", n <= p^2";
      os << ")";
      if (!cur->note.empty()) os << " [" << cur->note << "]";
      os << "\n";
      break;
    }
    os << indent << "strategy: cf-fft (n = " << cur->n << ", depth " << cur->depth << ")\n";
    os << indent << "  lambda: " << cur->params.lambda << "\n";
    os << indent << "  M: " << cur->params.m.to_decimal() << " =";
    for (std::size_t i = 0; i < cur->params.m_factors.powers.size(); ++i) {
      auto [q, e] = cur->params.m_factors.powers[i];
      os << (i == 0 ? " " : " * ") << q;
      if (e > 1) os << "^" << e;
    }
    os << "\n";
    os << indent << "  N: " << cur->params.packed.product << " =";
    for (std::size_t i = 0; i < cur->params.packed.lengths.size(); ++i) {
      os << (i == 0 ? " " : " * ") << cur->params.packed.lengths[i];
    }
    os << "\n";
    os << indent << "  kappa: " << cur->kappa << "\n";
    os << indent << "  inner lengths:";
    for (u64 ni : cur->inner_lengths) os << " " << ni;
    os << "\n";
    // Descend into the largest child (the others are the same or smaller).
    const MulPlan* next = nullptr;
    for (const auto& ch : cur->children) {
      if (next == nullptr || ch->n > next->n) next = ch.get();
    }
    if (next == nullptr) break;
    indent += "  ";
    cur = next;
  }
  return os.str();
}

}  // namespace fpmul
