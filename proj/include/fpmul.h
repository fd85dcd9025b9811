/* Copyright 2026 The fpmul Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* fpmul: exact multiplication of dense polynomials over prime fields F_p.
 *
 * The library routes products between an integer-packing base case and a
 * transform pipeline (smooth-order extension fields, mixed-radix DFTs with
 * chirp short transforms, and a weighted-split length reduction), and ships
 * the naive oracles the fast paths are verified against.
 *
 * All handles are opaque; every function returns an FPMUL_* status code and
 * writes results through out-parameters. Handles are immutable after
 * creation and safe to share across threads. Strings returned through
 * char** out-parameters are heap-allocated; release them with
 * fpmul_string_free.
 */

#ifndef FPMUL_H
#define FPMUL_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define FPMUL_API __declspec(dllexport)
#else
#define FPMUL_API __attribute__((visibility("default")))
#endif

/* Status codes. */
enum {
  FPMUL_OK = 0,
  FPMUL_ERR_NOT_PRIME = 1,
  FPMUL_ERR_NO_INVERSE = 2,
  FPMUL_ERR_CONTEXT_MISMATCH = 3,
  FPMUL_ERR_PARAMETER = 4,
  FPMUL_ERR_DIVISIBILITY = 5,
  FPMUL_ERR_SEARCH_EXHAUSTED = 6,
  FPMUL_ERR_PARSE = 7,
  FPMUL_ERR_LENGTH = 8,
  FPMUL_ERR_UNSUPPORTED = 9,
  FPMUL_ERR_INTERNAL = 10,
  FPMUL_ERR_NOMEM = 11
};

/* Multiplication strategies. */
enum {
  FPMUL_STRATEGY_AUTO = 0,
  FPMUL_STRATEGY_KRONECKER = 1,
  FPMUL_STRATEGY_CF_FFT = 2
};

typedef struct fpmul_ctx fpmul_ctx;               /* prime modulus context */
typedef struct fpmul_poly fpmul_poly;             /* dense polynomial */
typedef struct fpmul_multiplier fpmul_multiplier; /* strategy + plan cache */
typedef struct fpmul_extfield fpmul_extfield;     /* extension field F_{p^k} */

typedef struct fpmul_config {
  uint64_t base_threshold;      /* lengths up to this use integer packing */
  uint64_t target_multiple;     /* smooth order must reach multiple * n */
  uint64_t lambda_max;          /* extension-degree search bound */
  int accidental_factors;      /* enrich the smooth order from p^lambda - 1 */
  uint32_t direct_leaf_max;     /* short transforms up to this evaluate directly */
  uint32_t bluestein_naive_floor; /* chirp convolutions below this are naive */
  uint32_t max_depth;           /* pipeline nesting cap */
  int allow_growth_nesting;    /* let nested levels grow the length (depth-capped) */
  uint64_t seed;                /* seed for all randomized searches */
  int strategy;                 /* FPMUL_STRATEGY_* */
} fpmul_config;

FPMUL_API void fpmul_config_init(fpmul_config* cfg);

FPMUL_API const char* fpmul_strerror(int code);
FPMUL_API const char* fpmul_version(void);
FPMUL_API void fpmul_string_free(char* s);

/* --- contexts ---------------------------------------------------------- */

/* Primality is verified; composite moduli give FPMUL_ERR_NOT_PRIME. */
FPMUL_API int fpmul_ctx_new_u64(uint64_t p, fpmul_ctx** out);
FPMUL_API int fpmul_ctx_new_decimal(const char* p_decimal, fpmul_ctx** out);
FPMUL_API void fpmul_ctx_free(fpmul_ctx* ctx);
FPMUL_API int fpmul_ctx_modulus_decimal(const fpmul_ctx* ctx, char** out);
FPMUL_API int fpmul_ctx_bits(const fpmul_ctx* ctx, uint32_t* out);

/* --- polynomials -------------------------------------------------------- */

/* Coefficient i multiplies X^i. Values are reduced mod p. */
FPMUL_API int fpmul_poly_new_u64(const fpmul_ctx* ctx, const uint64_t* coeffs, size_t n,
                                 fpmul_poly** out);
/* Decimal strings; values must already lie in [0, p) or FPMUL_ERR_PARSE. */
FPMUL_API int fpmul_poly_new_decimal(const fpmul_ctx* ctx, const char* const* coeffs, size_t n,
                                     fpmul_poly** out);
FPMUL_API void fpmul_poly_free(fpmul_poly* poly);
FPMUL_API size_t fpmul_poly_length(const fpmul_poly* poly);
/* Indices beyond the stored length read as zero. FPMUL_ERR_UNSUPPORTED
 * when the modulus exceeds 64 bits. */
FPMUL_API int fpmul_poly_coeff_u64(const fpmul_poly* poly, size_t i, uint64_t* out);
FPMUL_API int fpmul_poly_coeff_decimal(const fpmul_poly* poly, size_t i, char** out);
/* 64-bit fold of the trimmed coefficients; equal products fold equally. */
FPMUL_API int fpmul_poly_checksum(const fpmul_poly* poly, uint64_t* out);

/* --- multiplication ----------------------------------------------------- */

/* cfg may be NULL for defaults everywhere it appears. */
FPMUL_API int fpmul_multiplier_new(const fpmul_ctx* ctx, const fpmul_config* cfg,
                                   fpmul_multiplier** out);
FPMUL_API void fpmul_multiplier_free(fpmul_multiplier* mul);

/* Exact product in F_p[X]; the result is trimmed to its semantic length. */
FPMUL_API int fpmul_multiplier_multiply(const fpmul_multiplier* mul, const fpmul_poly* a,
                                        const fpmul_poly* b, fpmul_poly** out);
/* a * b mod X^n - 1; the result has length exactly n. */
FPMUL_API int fpmul_multiplier_cyclic(const fpmul_multiplier* mul, const fpmul_poly* a,
                                      const fpmul_poly* b, uint64_t n, fpmul_poly** out);
/* outs must hold `count` slots; v's transform data is computed once. */
FPMUL_API int fpmul_multiplier_cyclic_batch(const fpmul_multiplier* mul,
                                            const fpmul_poly* const* us, size_t count,
                                            const fpmul_poly* v, uint64_t n, fpmul_poly** outs);

/* One-shot conveniences (a fresh multiplier per call). */
FPMUL_API int fpmul_multiply(const fpmul_poly* a, const fpmul_poly* b, const fpmul_config* cfg,
                             fpmul_poly** out);
FPMUL_API int fpmul_cyclic_multiply(const fpmul_poly* a, const fpmul_poly* b, uint64_t n,
                                    const fpmul_config* cfg, fpmul_poly** out);

/* Schoolbook oracles, for cross-checks. */
FPMUL_API int fpmul_naive_multiply(const fpmul_poly* a, const fpmul_poly* b, fpmul_poly** out);
FPMUL_API int fpmul_naive_cyclic_multiply(const fpmul_poly* a, const fpmul_poly* b, uint64_t n,
                                          fpmul_poly** out);

/* Textual report of the plan the strategy would use for cyclic length n:
 * the chosen route, and for the pipeline its extension degree seed, smooth
 * order with factorization, packaged transform lengths, kappa, inner
 * lengths and nesting depth. */
FPMUL_API int fpmul_explain(const fpmul_ctx* ctx, uint64_t n, const fpmul_config* cfg,
                            char** out_text);

/* --- self-verification --------------------------------------------------- */

typedef struct fpmul_verify_opts {
  uint64_t max_n;          /* operand length bound (default 512) */
  const uint64_t* primes;  /* NULL for the default prime set */
  size_t num_primes;
  uint64_t seed;
  uint64_t cases;          /* total case count (default 1200) */
  int64_t inject_fault_at; /* test fixture: corrupt this case; -1 = off */
} fpmul_verify_opts;

typedef struct fpmul_verify_result {
  uint64_t cases_run;
  uint64_t failures;
  uint64_t multiply_cases;
  uint64_t dft_cases;
  uint64_t cf_cases;
  uint64_t bluestein_cases;
  int has_failure;
  char failure_kind[32]; /* which suite produced the first mismatch */
  uint64_t failure_p;
  uint64_t failure_n;
  uint64_t failure_seed; /* reproduces the failing case */
} fpmul_verify_result;

FPMUL_API void fpmul_verify_opts_init(fpmul_verify_opts* opts);
FPMUL_API int fpmul_verify(const fpmul_verify_opts* opts, fpmul_verify_result* out);

/* --- extension fields ----------------------------------------------------- */

/* F_{p^kappa} with a randomly found, verified irreducible modulus. The
 * context modulus must fit 64 bits. */
FPMUL_API int fpmul_extfield_new(const fpmul_ctx* ctx, uint32_t kappa, uint64_t seed,
                                 fpmul_extfield** out);
FPMUL_API void fpmul_extfield_free(fpmul_extfield* field);
/* Modulus coefficients as space-separated decimals, constant term first. */
FPMUL_API int fpmul_extfield_modulus(const fpmul_extfield* field, char** out);

/* Polynomials over F_{p^kappa}: element i occupies words [i*kappa,
 * (i+1)*kappa), each word one F_p coefficient. out must hold
 * (na + nb - 1) * kappa words. */
FPMUL_API int fpmul_ext_poly_multiply(const fpmul_extfield* field, const uint64_t* a, size_t na,
                                      const uint64_t* b, size_t nb, uint64_t* out);

#ifdef __cplusplus
}
#endif

#endif /* FPMUL_H */
