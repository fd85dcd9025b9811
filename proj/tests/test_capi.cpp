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

// Exercises the shared-library surface alone: opaque handles, status codes
// and the documented out-parameter conventions.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstring>
#include <string>
#include <vector>

#include "doctest.h"
#include "fpmul.h"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  fpmul_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("context lifecycle and validation") {
  fpmul_ctx* ctx = nullptr;
  CHECK(fpmul_ctx_new_u64(91, &ctx) == FPMUL_ERR_NOT_PRIME);
  REQUIRE(fpmul_ctx_new_u64(13, &ctx) == FPMUL_OK);
  char* p = nullptr;
  CHECK(fpmul_ctx_modulus_decimal(ctx, &p) == FPMUL_OK);
  CHECK(take(p) == "13");
  uint32_t bits = 0;
  CHECK(fpmul_ctx_bits(ctx, &bits) == FPMUL_OK);
  CHECK(bits == 4);
  fpmul_ctx_free(ctx);

  fpmul_ctx* wide = nullptr;
  REQUIRE(fpmul_ctx_new_decimal("618970019642690137449562111", &wide) == FPMUL_OK);  // 2^89-1
  fpmul_ctx_free(wide);
  CHECK(fpmul_ctx_new_decimal("not-a-number", &wide) == FPMUL_ERR_PARSE);
}

TEST_CASE("polynomial construction and readback") {
  fpmul_ctx* ctx = nullptr;
  REQUIRE(fpmul_ctx_new_u64(5, &ctx) == FPMUL_OK);
  uint64_t coeffs[] = {1, 7, 4};  // 7 reduces to 2
  fpmul_poly* poly = nullptr;
  REQUIRE(fpmul_poly_new_u64(ctx, coeffs, 3, &poly) == FPMUL_OK);
  CHECK(fpmul_poly_length(poly) == 3);
  uint64_t c = 99;
  CHECK(fpmul_poly_coeff_u64(poly, 1, &c) == FPMUL_OK);
  CHECK(c == 2);
  char* text = nullptr;
  CHECK(fpmul_poly_coeff_decimal(poly, 2, &text) == FPMUL_OK);
  CHECK(take(text) == "4");
  fpmul_poly_free(poly);

  // Decimal path validates the range.
  const char* good[] = {"4", "0", "3"};
  REQUIRE(fpmul_poly_new_decimal(ctx, good, 3, &poly) == FPMUL_OK);
  fpmul_poly_free(poly);
  const char* bad[] = {"5"};
  CHECK(fpmul_poly_new_decimal(ctx, bad, 1, &poly) == FPMUL_ERR_PARSE);
  const char* junk[] = {"x"};
  CHECK(fpmul_poly_new_decimal(ctx, junk, 1, &poly) == FPMUL_ERR_PARSE);
  fpmul_ctx_free(ctx);
}

TEST_CASE("multiply round trip with oracle and checksum agreement") {
  fpmul_ctx* ctx = nullptr;
  REQUIRE(fpmul_ctx_new_u64(3, &ctx) == FPMUL_OK);
  uint64_t ca[] = {1, 2};
  uint64_t cb[] = {2, 1};
  fpmul_poly* a = nullptr;
  fpmul_poly* b = nullptr;
  REQUIRE(fpmul_poly_new_u64(ctx, ca, 2, &a) == FPMUL_OK);
  REQUIRE(fpmul_poly_new_u64(ctx, cb, 2, &b) == FPMUL_OK);

  fpmul_poly* fast = nullptr;
  fpmul_poly* naive = nullptr;
  REQUIRE(fpmul_multiply(a, b, nullptr, &fast) == FPMUL_OK);
  REQUIRE(fpmul_naive_multiply(a, b, &naive) == FPMUL_OK);
  CHECK(fpmul_poly_length(fast) == 3);
  uint64_t h1 = 0, h2 = 0;
  CHECK(fpmul_poly_checksum(fast, &h1) == FPMUL_OK);
  CHECK(fpmul_poly_checksum(naive, &h2) == FPMUL_OK);
  CHECK(h1 == h2);
  for (size_t i = 0; i < 3; ++i) {
    uint64_t c = 0;
    fpmul_poly_coeff_u64(fast, i, &c);
    CHECK(c == 2);
  }
  fpmul_poly_free(fast);
  fpmul_poly_free(naive);

  // Context mismatch is reported.
  fpmul_ctx* other = nullptr;
  REQUIRE(fpmul_ctx_new_u64(5, &other) == FPMUL_OK);
  fpmul_poly* c5 = nullptr;
  REQUIRE(fpmul_poly_new_u64(other, ca, 2, &c5) == FPMUL_OK);
  fpmul_poly* out = nullptr;
  CHECK(fpmul_multiply(a, c5, nullptr, &out) == FPMUL_ERR_CONTEXT_MISMATCH);
  fpmul_poly_free(c5);
  fpmul_ctx_free(other);
  fpmul_poly_free(a);
  fpmul_poly_free(b);
  fpmul_ctx_free(ctx);
}

TEST_CASE("multiplier handle, cyclic products and batch") {
  fpmul_ctx* ctx = nullptr;
  REQUIRE(fpmul_ctx_new_u64(13, &ctx) == FPMUL_OK);
  fpmul_multiplier* mul = nullptr;
  REQUIRE(fpmul_multiplier_new(ctx, nullptr, &mul) == FPMUL_OK);

  uint64_t cu[] = {1, 2, 3, 4};
  uint64_t cv[] = {5, 6, 7};
  fpmul_poly* u = nullptr;
  fpmul_poly* v = nullptr;
  REQUIRE(fpmul_poly_new_u64(ctx, cu, 4, &u) == FPMUL_OK);
  REQUIRE(fpmul_poly_new_u64(ctx, cv, 3, &v) == FPMUL_OK);

  fpmul_poly* fast = nullptr;
  fpmul_poly* naive = nullptr;
  REQUIRE(fpmul_multiplier_cyclic(mul, u, v, 4, &fast) == FPMUL_OK);
  REQUIRE(fpmul_naive_cyclic_multiply(u, v, 4, &naive) == FPMUL_OK);
  uint64_t h1 = 0, h2 = 0;
  fpmul_poly_checksum(fast, &h1);
  fpmul_poly_checksum(naive, &h2);
  CHECK(h1 == h2);
  fpmul_poly_free(fast);
  fpmul_poly_free(naive);

  const fpmul_poly* us[2] = {u, u};
  fpmul_poly* outs[2] = {nullptr, nullptr};
  REQUIRE(fpmul_multiplier_cyclic_batch(mul, us, 2, v, 4, outs) == FPMUL_OK);
  uint64_t hb0 = 0, hb1 = 0;
  fpmul_poly_checksum(outs[0], &hb0);
  fpmul_poly_checksum(outs[1], &hb1);
  CHECK(hb0 == hb1);
  fpmul_poly_free(outs[0]);
  fpmul_poly_free(outs[1]);

  // Operand longer than n.
  fpmul_poly* bad = nullptr;
  CHECK(fpmul_multiplier_cyclic(mul, u, v, 2, &bad) == FPMUL_ERR_LENGTH);

  fpmul_poly_free(u);
  fpmul_poly_free(v);
  fpmul_multiplier_free(mul);
  fpmul_ctx_free(ctx);
}

TEST_CASE("explain surfaces the plan") {
  fpmul_ctx* ctx = nullptr;
  REQUIRE(fpmul_ctx_new_u64(7, &ctx) == FPMUL_OK);
  fpmul_config cfg;
  fpmul_config_init(&cfg);
  cfg.strategy = FPMUL_STRATEGY_CF_FFT;
  cfg.target_multiple = 1;
  cfg.accidental_factors = 0;
  char* text = nullptr;
  REQUIRE(fpmul_explain(ctx, 25, &cfg, &text) == FPMUL_OK);
  std::string report = take(text);
  CHECK(report.find("lambda: 4") != std::string::npos);
  CHECK(report.find("M: 30") != std::string::npos);
  fpmul_ctx_free(ctx);
}

TEST_CASE("verify runs and reports injected faults") {
  fpmul_verify_opts opts;
  fpmul_verify_opts_init(&opts);
  opts.cases = 40;
  opts.max_n = 64;
  fpmul_verify_result result;
  REQUIRE(fpmul_verify(&opts, &result) == FPMUL_OK);
  CHECK(result.cases_run == 40);
  CHECK(result.failures == 0);
  CHECK(result.has_failure == 0);

  opts.inject_fault_at = 4;  // a multiply case
  REQUIRE(fpmul_verify(&opts, &result) == FPMUL_OK);
  CHECK(result.failures == 1);
  CHECK(result.has_failure == 1);
  CHECK(std::strcmp(result.failure_kind, "multiply") == 0);
  CHECK(result.failure_seed != 0);
}

TEST_CASE("extension field surface") {
  fpmul_ctx* ctx = nullptr;
  REQUIRE(fpmul_ctx_new_u64(2, &ctx) == FPMUL_OK);
  fpmul_extfield* field = nullptr;
  REQUIRE(fpmul_extfield_new(ctx, 4, 9, &field) == FPMUL_OK);
  char* mod = nullptr;
  REQUIRE(fpmul_extfield_modulus(field, &mod) == FPMUL_OK);
  std::string mod_text = take(mod);
  CHECK(!mod_text.empty());

  // (Z + X) * Z = Z^2 + X Z over F_16, whatever the modulus: element words
  // are F_2 coefficients of Z powers.
  uint64_t a[8] = {0, 1, 0, 0,   // a_0 = Z
                   1, 0, 0, 0};  // a_1 = 1
  uint64_t b[4] = {0, 1, 0, 0};  // b_0 = Z
  uint64_t out[8] = {99, 99, 99, 99, 99, 99, 99, 99};
  REQUIRE(fpmul_ext_poly_multiply(field, a, 2, b, 1, out) == FPMUL_OK);
  CHECK(out[0] == 0);
  CHECK(out[1] == 0);
  CHECK(out[2] == 1);  // Z^2
  CHECK(out[3] == 0);
  CHECK(out[4] == 0);
  CHECK(out[5] == 1);  // Z
  CHECK(out[6] == 0);
  CHECK(out[7] == 0);

  fpmul_extfield_free(field);
  fpmul_ctx_free(ctx);
}

TEST_CASE("strerror and version") {
  CHECK(std::strcmp(fpmul_strerror(FPMUL_OK), "ok") == 0);
  CHECK(fpmul_strerror(FPMUL_ERR_NOT_PRIME) != nullptr);
  CHECK(fpmul_version() != nullptr);
}
