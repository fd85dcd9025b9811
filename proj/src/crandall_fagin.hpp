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

#ifndef FPMUL_CRANDALL_FAGIN_HPP
#define FPMUL_CRANDALL_FAGIN_HPP

#include "dft.hpp"
#include "ext_field.hpp"

namespace fpmul {

/// Weighted-split plan reducing multiplication in F_p[X]/(X^n - 1) to a
/// length-N cyclic convolution over F_{p^kappa}, built around an element
/// theta with theta^N = Z. Chunk i covers coefficients [e_i, e_{i+1}) with
/// e_i = ceil(n*i/N); the weights are theta^(c_i) for c_i = N*e_i - n*i.
struct CfPlan {
  u64 n = 0;
  u64 big_n = 0;  // N
  FieldPtr field;
  ExtElement theta;
  std::vector<u64> e;  // split positions, e[0..N-1]
  std::vector<u64> c;  // residues, 0 <= c_i < N
  ExtVec weights;      // theta^(c_i)
  ExtVec unweights;    // theta^(-c_i)
};

// Modulus P and theta with theta^N = Z, by seeded random search: a random
// primitive-candidate zeta is accepted when 1, zeta^N, ..., zeta^((k-1)N)
// are linearly independent; P is the minimal polynomial of zeta^N and
// theta the preimage of zeta under Z -> zeta^N. Requires p^(kappa/2) > N.
std::pair<FieldPtr, ExtElement> find_theta(const CtxPtr& ctx, std::size_t kappa, u64 big_n,
                                           u64 seed);

// Builds all tables incrementally (the c-increments take two values, so
// the weight sequence costs O(N) multiplications). Requires
// kappa >= 2 * ceil(n / N) and theta^N = Z.
CfPlan cf_plan(u64 n, u64 big_n, FieldPtr field, const ExtElement& theta);

// Chunk u (length <= n) into N weighted extension elements.
ExtVec cf_split_weight(const FpPoly& u, const CfPlan& plan);

// Unweight and overlap-add the convolution output back to F_p[X]/(X^n - 1).
FpPoly cf_recombine(const ExtVec& w, const CfPlan& plan);

}  // namespace fpmul

#endif  // FPMUL_CRANDALL_FAGIN_HPP
