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

#include "fpmul.h"

#include <cstdio>
#include <cstring>
#include <vector>
#include <new>

#include "multiplier.hpp"
#include "verify.hpp"

using namespace fpmul;

struct fpmul_ctx {
  CtxPtr ctx;
};

struct fpmul_poly {
  FpPoly poly;
};

struct fpmul_multiplier {
  std::shared_ptr<const Multiplier> mul;
};

struct fpmul_extfield {
  FieldPtr field;
};

namespace {

int code_of(const Error& e) { return static_cast<int>(e.code()); }

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    fn();
    return FPMUL_OK;
  } catch (const Error& e) {
    return code_of(e);
  } catch (const std::bad_alloc&) {
    return FPMUL_ERR_NOMEM;
  } catch (...) {
    return FPMUL_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

MulConfig to_config(const fpmul_config* cfg) {
  MulConfig out;
  if (cfg == nullptr) return out;
  out.base_threshold = cfg->base_threshold;
  out.target_multiple = cfg->target_multiple;
  out.lambda_max = cfg->lambda_max;
  out.accidental_factors = cfg->accidental_factors != 0;
  out.direct_leaf_max = cfg->direct_leaf_max;
  out.bluestein_naive_floor = cfg->bluestein_naive_floor;
  out.max_depth = cfg->max_depth;
  out.allow_growth_nesting = cfg->allow_growth_nesting != 0;
  out.seed = cfg->seed;
  switch (cfg->strategy) {
    case FPMUL_STRATEGY_KRONECKER: out.strategy = Strategy::kKronecker; break;
    case FPMUL_STRATEGY_CF_FFT: out.strategy = Strategy::kCfFft; break;
    default: out.strategy = Strategy::kAuto; break;
  }
  return out;
}

}  // namespace

extern "C" {

void fpmul_config_init(fpmul_config* cfg) {
  MulConfig d;
  cfg->base_threshold = d.base_threshold;
  cfg->target_multiple = d.target_multiple;
  cfg->lambda_max = d.lambda_max;
  cfg->accidental_factors = d.accidental_factors ? 1 : 0;
  cfg->direct_leaf_max = static_cast<uint32_t>(d.direct_leaf_max);
  cfg->bluestein_naive_floor = static_cast<uint32_t>(d.bluestein_naive_floor);
  cfg->max_depth = d.max_depth;
  cfg->allow_growth_nesting = d.allow_growth_nesting ? 1 : 0;
  cfg->seed = d.seed;
  cfg->strategy = FPMUL_STRATEGY_AUTO;
}

const char* fpmul_strerror(int code) {
  switch (code) {
    case FPMUL_OK: return "ok";
    case FPMUL_ERR_NOT_PRIME: return "modulus is not prime";
    case FPMUL_ERR_NO_INVERSE: return "element has no inverse";
    case FPMUL_ERR_CONTEXT_MISMATCH: return "operands use different moduli";
    case FPMUL_ERR_PARAMETER: return "invalid parameter";
    case FPMUL_ERR_DIVISIBILITY: return "divisibility precondition violated";
    case FPMUL_ERR_SEARCH_EXHAUSTED: return "randomized search exhausted its trial cap";
    case FPMUL_ERR_PARSE: return "parse error";
    case FPMUL_ERR_LENGTH: return "length mismatch";
    case FPMUL_ERR_UNSUPPORTED: return "operation unsupported for this modulus";
    case FPMUL_ERR_NOMEM: return "out of memory";
    default: return "internal error";
  }
}

const char* fpmul_version(void) { return "1.0.0"; }

void fpmul_string_free(char* s) { delete[] s; }

/* --- contexts ---------------------------------------------------------- */

int fpmul_ctx_new_u64(uint64_t p, fpmul_ctx** out) {
  return guarded([&] { *out = new fpmul_ctx{PrimeContext::create_u64(p)}; });
}

int fpmul_ctx_new_decimal(const char* p_decimal, fpmul_ctx** out) {
  return guarded([&] { *out = new fpmul_ctx{PrimeContext::create(BigInt::from_decimal(p_decimal))}; });
}

void fpmul_ctx_free(fpmul_ctx* ctx) { delete ctx; }

int fpmul_ctx_modulus_decimal(const fpmul_ctx* ctx, char** out) {
  return guarded([&] { *out = dup_string(ctx->ctx->modulus().to_decimal()); });
}

int fpmul_ctx_bits(const fpmul_ctx* ctx, uint32_t* out) {
  return guarded([&] { *out = ctx->ctx->lg_p(); });
}

/* --- polynomials -------------------------------------------------------- */

int fpmul_poly_new_u64(const fpmul_ctx* ctx, const uint64_t* coeffs, size_t n, fpmul_poly** out) {
  return guarded([&] {
    *out = new fpmul_poly{FpPoly::from_u64(ctx->ctx, std::span<const u64>(coeffs, n))};
  });
}

int fpmul_poly_new_decimal(const fpmul_ctx* ctx, const char* const* coeffs, size_t n,
                           fpmul_poly** out) {
  return guarded([&] {
    FpPoly p = FpPoly::zeros(ctx->ctx, n);
    for (size_t i = 0; i < n; ++i) {
      BigInt v;
      try {
        v = BigInt::from_decimal(coeffs[i]);
      } catch (const Error&) {
        raise(ErrorCode::kParse, std::string("bad coefficient: ") + coeffs[i]);
      }
      if (v >= ctx->ctx->modulus()) {
        raise(ErrorCode::kParse, std::string("coefficient out of range: ") + coeffs[i]);
      }
      p.set_big(i, v);
    }
    *out = new fpmul_poly{std::move(p)};
  });
}

void fpmul_poly_free(fpmul_poly* poly) { delete poly; }

size_t fpmul_poly_length(const fpmul_poly* poly) { return poly->poly.length(); }

int fpmul_poly_coeff_u64(const fpmul_poly* poly, size_t i, uint64_t* out) {
  return guarded([&] {
    if (!poly->poly.context()->single_word()) {
      raise(ErrorCode::kUnsupported, "modulus exceeds 64 bits");
    }
    *out = poly->poly.get64(i);
  });
}

int fpmul_poly_coeff_decimal(const fpmul_poly* poly, size_t i, char** out) {
  return guarded([&] { *out = dup_string(poly->poly.get_big(i).to_decimal()); });
}

int fpmul_poly_checksum(const fpmul_poly* poly, uint64_t* out) {
  return guarded([&] { *out = poly_checksum(poly->poly); });
}

/* --- multiplication ----------------------------------------------------- */

int fpmul_multiplier_new(const fpmul_ctx* ctx, const fpmul_config* cfg, fpmul_multiplier** out) {
  return guarded([&] {
    *out = new fpmul_multiplier{std::make_shared<Multiplier>(ctx->ctx, to_config(cfg))};
  });
}

void fpmul_multiplier_free(fpmul_multiplier* mul) { delete mul; }

int fpmul_multiplier_multiply(const fpmul_multiplier* mul, const fpmul_poly* a,
                              const fpmul_poly* b, fpmul_poly** out) {
  return guarded([&] {
    *out = new fpmul_poly{mul->mul->multiply(a->poly, b->poly).trimmed()};
  });
}

int fpmul_multiplier_cyclic(const fpmul_multiplier* mul, const fpmul_poly* a, const fpmul_poly* b,
                            uint64_t n, fpmul_poly** out) {
  return guarded([&] {
    *out = new fpmul_poly{mul->mul->cyclic_multiply(a->poly, b->poly, n).resized(n)};
  });
}

int fpmul_multiplier_cyclic_batch(const fpmul_multiplier* mul, const fpmul_poly* const* us,
                                  size_t count, const fpmul_poly* v, uint64_t n,
                                  fpmul_poly** outs) {
  return guarded([&] {
    std::vector<FpPoly> inputs;
    inputs.reserve(count);
    for (size_t i = 0; i < count; ++i) inputs.push_back(us[i]->poly);
    std::vector<FpPoly> results = mul->mul->cyclic_multiply_batch(inputs, v->poly, n);
    for (size_t i = 0; i < count; ++i) {
      outs[i] = new fpmul_poly{results[i].resized(n)};
    }
  });
}

int fpmul_multiply(const fpmul_poly* a, const fpmul_poly* b, const fpmul_config* cfg,
                   fpmul_poly** out) {
  return guarded([&] {
    Multiplier mul(a->poly.context(), to_config(cfg));
    *out = new fpmul_poly{mul.multiply(a->poly, b->poly).trimmed()};
  });
}

int fpmul_cyclic_multiply(const fpmul_poly* a, const fpmul_poly* b, uint64_t n,
                          const fpmul_config* cfg, fpmul_poly** out) {
  return guarded([&] {
    Multiplier mul(a->poly.context(), to_config(cfg));
    *out = new fpmul_poly{mul.cyclic_multiply(a->poly, b->poly, n).resized(n)};
  });
}

int fpmul_naive_multiply(const fpmul_poly* a, const fpmul_poly* b, fpmul_poly** out) {
  return guarded([&] { *out = new fpmul_poly{poly_mul_naive(a->poly, b->poly)}; });
}

int fpmul_naive_cyclic_multiply(const fpmul_poly* a, const fpmul_poly* b, uint64_t n,
                                fpmul_poly** out) {
  return guarded([&] { *out = new fpmul_poly{poly_cyclic_naive(a->poly, b->poly, n)}; });
}

int fpmul_explain(const fpmul_ctx* ctx, uint64_t n, const fpmul_config* cfg, char** out_text) {
  return guarded([&] {
    Multiplier mul(ctx->ctx, to_config(cfg));
    *out_text = dup_string(describe_plan(*mul.plan_for_multiply(n), *ctx->ctx));
  });
}

/* --- self-verification --------------------------------------------------- */

void fpmul_verify_opts_init(fpmul_verify_opts* opts) {
  VerifyOptions d;
  opts->max_n = d.max_n;
  opts->primes = nullptr;
  opts->num_primes = 0;
  opts->seed = d.seed;
  opts->cases = d.cases;
  opts->inject_fault_at = -1;
}

int fpmul_verify(const fpmul_verify_opts* opts, fpmul_verify_result* out) {
  return guarded([&] {
    VerifyOptions vo;
    if (opts != nullptr) {
      vo.max_n = opts->max_n;
      if (opts->primes != nullptr && opts->num_primes > 0) {
        vo.primes.assign(opts->primes, opts->primes + opts->num_primes);
      }
      vo.seed = opts->seed;
      vo.cases = opts->cases;
      vo.inject_fault_at = opts->inject_fault_at;
    }
    VerifyResult r = run_verify(vo);
    std::memset(out, 0, sizeof(*out));
    out->cases_run = r.cases_run;
    out->failures = r.failures;
    out->multiply_cases = r.multiply_cases;
    out->dft_cases = r.dft_cases;
    out->cf_cases = r.cf_cases;
    out->bluestein_cases = r.bluestein_cases;
    out->has_failure = r.first_failure ? 1 : 0;
    if (r.first_failure) {
      std::snprintf(out->failure_kind, sizeof(out->failure_kind), "%s",
                    r.first_failure->kind.c_str());
      out->failure_p = r.first_failure->p;
      out->failure_n = r.first_failure->n;
      out->failure_seed = r.first_failure->case_seed;
    }
  });
}

/* --- extension fields ----------------------------------------------------- */

int fpmul_extfield_new(const fpmul_ctx* ctx, uint32_t kappa, uint64_t seed, fpmul_extfield** out) {
  return guarded([&] {
    *out = new fpmul_extfield{ExtField::find_irreducible(ctx->ctx, kappa, seed)};
  });
}

void fpmul_extfield_free(fpmul_extfield* field) { delete field; }

int fpmul_extfield_modulus(const fpmul_extfield* field, char** out) {
  return guarded([&] {
    const FpPoly& m = field->field->modulus();
    std::string text;
    for (std::size_t i = 0; i < m.length(); ++i) {
      if (i > 0) text += ' ';
      text += m.get_big(i).to_decimal();
    }
    *out = dup_string(text);
  });
}

int fpmul_ext_poly_multiply(const fpmul_extfield* field, const uint64_t* a, size_t na,
                            const uint64_t* b, size_t nb, uint64_t* out) {
  return guarded([&] {
    const FieldPtr& f = field->field;
    std::size_t kappa = f->kappa();
    if (na == 0 || nb == 0) raise(ErrorCode::kParameter, "empty operand");
    ExtVec va = ExtVec::zeros(na, kappa), vb = ExtVec::zeros(nb, kappa);
    const CtxPtr& ctx = f->context();
    for (std::size_t i = 0; i < na * kappa; ++i) va.w[i] = ctx->reduce(a[i]);
    for (std::size_t i = 0; i < nb * kappa; ++i) vb.w[i] = ctx->reduce(b[i]);
    KsBaseMultiplier ks;
    ExtVec c = ext_poly_multiply(f, va, vb, ks);
    std::copy(c.w.begin(), c.w.end(), out);
  });
}

}  // extern "C"
