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

#ifndef FPMUL_MULTIPLIER_HPP
#define FPMUL_MULTIPLIER_HPP

#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "crandall_fagin.hpp"
#include "smooth.hpp"

namespace fpmul {

enum class Strategy { kAuto = 0, kKronecker = 1, kCfFft = 2 };

struct MulConfig {
  u64 base_threshold = u64{1} << 14;  // lengths up to this stay with integer packing
  u64 target_multiple = 2;            // M must reach multiple * n
  u64 lambda_max = 512;
  bool accidental_factors = true;
  std::size_t direct_leaf_max = 8;
  std::size_t bluestein_naive_floor = 32;
  unsigned max_depth = 3;           // levels of weighted-split nesting
  bool allow_growth_nesting = false;  // let nested levels grow the length (depth-capped)
  u64 seed = 0x5eedf00d;
  Strategy strategy = Strategy::kAuto;
};

/// Resolved plan for cyclic length n: either the integer-packing base case
/// or the weighted-split + transform pipeline with per-inner-length child
/// plans. Plans are immutable and safe to share.
struct MulPlan {
  enum class Kind { kKroneckerBase, kCfFft };

  u64 n = 0;
  Kind kind = Kind::kKroneckerBase;
  unsigned depth = 0;  // 0 for base case, else 1 + max child depth
  std::string note;    // set when a requested pipeline fell back

  // kCfFft payload.
  SmoothParams params;
  u64 kappa = 0;
  FieldPtr field;
  CfPlan cf;
  PlanPtr transform;
  std::vector<u64> inner_lengths;  // parallel to params.packed.lengths
  std::vector<std::shared_ptr<const MulPlan>> children;
  std::shared_ptr<const PolyMultiplier> inner_mul;  // binds inner lengths to children
};

using MulPlanPtr = std::shared_ptr<const MulPlan>;

// Plan execution; free functions so plans stand alone once built.
FpPoly mul_plan_cyclic(const MulPlan& plan, const FpPoly& a, const FpPoly& b);
std::shared_ptr<const void> mul_plan_prepare(const MulPlan& plan, const FpPoly& v);
FpPoly mul_plan_cyclic_prepared(const MulPlan& plan, const FpPoly& u, const void* prepared);

/// Public multiplication API: exact products in F_p[X] with automatic
/// routing between the base case and the pipeline, plus fixed-operand
/// batches. Stateless apart from a plan cache; safe for concurrent use.
class Multiplier final : public PolyMultiplier {
 public:
  explicit Multiplier(CtxPtr ctx, MulConfig cfg = {});

  const CtxPtr& context() const { return ctx_; }
  const MulConfig& config() const { return cfg_; }

  // Exact product; operands only need a shared modulus.
  FpPoly multiply(const FpPoly& a, const FpPoly& b) const override;
  // a * b mod X^n - 1.
  FpPoly cyclic_multiply(const FpPoly& a, const FpPoly& b, std::size_t n) const override;
  std::shared_ptr<const void> prepare_cyclic_fixed(const FpPoly& v, std::size_t n) const override;
  FpPoly cyclic_multiply_prepared(const FpPoly& u, std::size_t n,
                                  const void* prepared) const override;

  // u_j * v mod X^n - 1 for each j, transforming v once.
  std::vector<FpPoly> cyclic_multiply_batch(std::span<const FpPoly> us, const FpPoly& v,
                                            std::size_t n) const;

  // The plan the strategy would use for a cyclic product of length exactly
  // n (cached).
  MulPlanPtr plan_for(u64 n) const;
  // The plan for a full product needing cyclic length at least n; the
  // planner may round the length up so a packaged transform length fits
  // (plan->n carries the padded length).
  MulPlanPtr plan_for_multiply(u64 n) const;

 private:
  MulPlanPtr plan_recursive(u64 n, unsigned depth, Strategy strategy, bool allow_pad) const;
  MulPlanPtr plan_cf(u64 n, unsigned depth, bool allow_pad, std::string* why_not) const;

  CtxPtr ctx_;
  MulConfig cfg_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<u64, int>, MulPlanPtr> cache_;
};

/// One line per pipeline level, for the parameter-report surface.
std::string describe_plan(const MulPlan& plan, const PrimeContext& ctx);

}  // namespace fpmul

#endif  // FPMUL_MULTIPLIER_HPP
