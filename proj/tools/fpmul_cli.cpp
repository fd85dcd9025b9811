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

// Command-line front end over the shared C API: multiply polynomials from
// files, report planner parameters, run the oracle-verification sweep, and
// emit benchmark CSVs.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fpmul.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitParse = 2;
constexpr int kExitModulusMismatch = 3;

struct CtxDeleter {
  void operator()(fpmul_ctx* c) const { fpmul_ctx_free(c); }
};
struct PolyDeleter {
  void operator()(fpmul_poly* p) const { fpmul_poly_free(p); }
};
struct MulDeleter {
  void operator()(fpmul_multiplier* m) const { fpmul_multiplier_free(m); }
};
using CtxPtr = std::unique_ptr<fpmul_ctx, CtxDeleter>;
using PolyPtr = std::unique_ptr<fpmul_poly, PolyDeleter>;
using MulPtr = std::unique_ptr<fpmul_multiplier, MulDeleter>;

std::string take_string(char* s) {
  std::string out = s ? s : "";
  fpmul_string_free(s);
  return out;
}

// Text polynomial format:
//   p <decimal prime>
//   n <coefficient count>
//   <coefficients, X^0 first, whitespace separated>
struct PolyFile {
  CtxPtr ctx;
  PolyPtr poly;
};

bool parse_poly_file(const std::string& path, PolyFile& out, std::string& err) {
  std::ifstream in(path);
  if (!in) {
    err = "cannot open " + path;
    return false;
  }
  std::string tag, p_str;
  std::uint64_t n = 0;
  if (!(in >> tag) || tag != "p" || !(in >> p_str)) {
    err = path + ": expected 'p <prime>' on line 1";
    return false;
  }
  if (!(in >> tag) || tag != "n" || !(in >> n)) {
    err = path + ": expected 'n <count>' on line 2";
    return false;
  }
  fpmul_ctx* ctx = nullptr;
  int rc = fpmul_ctx_new_decimal(p_str.c_str(), &ctx);
  if (rc != FPMUL_OK) {
    err = path + ": bad modulus: " + fpmul_strerror(rc);
    return false;
  }
  out.ctx.reset(ctx);
  std::vector<std::string> coeffs(n);
  std::vector<const char*> ptrs(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    if (!(in >> coeffs[i])) {
      err = path + ": expected " + std::to_string(n) + " coefficients";
      return false;
    }
    ptrs[i] = coeffs[i].c_str();
  }
  fpmul_poly* poly = nullptr;
  rc = fpmul_poly_new_decimal(ctx, ptrs.data(), n, &poly);
  if (rc != FPMUL_OK) {
    err = path + ": " + fpmul_strerror(rc);
    return false;
  }
  out.poly.reset(poly);
  return true;
}

bool write_poly_file(const std::string& path, const fpmul_ctx* ctx, const fpmul_poly* poly,
                     std::string& err) {
  std::ofstream outf(path);
  if (!outf) {
    err = "cannot open " + path + " for writing";
    return false;
  }
  char* p_str = nullptr;
  fpmul_ctx_modulus_decimal(ctx, &p_str);
  outf << "p " << take_string(p_str) << "\n";
  size_t n = fpmul_poly_length(poly);
  outf << "n " << n << "\n";
  for (size_t i = 0; i < n; ++i) {
    char* c = nullptr;
    fpmul_poly_coeff_decimal(poly, i, &c);
    outf << (i ? " " : "") << take_string(c);
  }
  outf << "\n";
  return static_cast<bool>(outf);
}

int strategy_from_name(const std::string& name) {
  if (name == "kronecker") return FPMUL_STRATEGY_KRONECKER;
  if (name == "cf-fft") return FPMUL_STRATEGY_CF_FFT;
  return FPMUL_STRATEGY_AUTO;
}

struct CommonOpts {
  std::string strategy = "auto";
  std::uint64_t multiple = 2;
  bool no_accidental = false;
  std::uint64_t base_threshold = 0;  // 0 = default
  std::uint64_t lambda_max = 0;
  bool allow_growth = false;
  unsigned max_depth = 0;
  std::uint64_t seed = 0;

  fpmul_config to_config() const {
    fpmul_config cfg;
    fpmul_config_init(&cfg);
    cfg.strategy = strategy_from_name(strategy);
    cfg.target_multiple = multiple;
    if (no_accidental) cfg.accidental_factors = 0;
    if (base_threshold != 0) cfg.base_threshold = base_threshold;
    if (lambda_max != 0) cfg.lambda_max = lambda_max;
    if (allow_growth) cfg.allow_growth_nesting = 1;
    if (max_depth != 0) cfg.max_depth = max_depth;
    if (seed != 0) cfg.seed = seed;
    return cfg;
  }
};

void add_common_options(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--strategy", opts.strategy, "auto|kronecker|cf-fft")
      ->check(CLI::IsMember({"auto", "kronecker", "cf-fft"}));
  cmd->add_option("--multiple", opts.multiple, "smooth order must reach multiple*n (default 2)");
  cmd->add_flag("--no-accidental", opts.no_accidental,
                "do not enrich the smooth order from p^lambda-1");
  cmd->add_option("--base-threshold", opts.base_threshold, "force the base case up to this length");
  cmd->add_option("--lambda-max", opts.lambda_max, "extension-degree search bound");
  cmd->add_flag("--allow-growth", opts.allow_growth, "allow depth-capped growing recursion");
  cmd->add_option("--max-depth", opts.max_depth, "pipeline nesting cap");
  cmd->add_option("--seed", opts.seed, "seed for randomized searches");
}

int run_mul(const std::string& in_a, const std::string& in_b, const std::string& out_path,
            const CommonOpts& opts) {
  PolyFile a, b;
  std::string err;
  if (!parse_poly_file(in_a, a, err) || !parse_poly_file(in_b, b, err)) {
    std::cerr << "error: " << err << "\n";
    return kExitParse;
  }
  char* pa = nullptr;
  char* pb = nullptr;
  fpmul_ctx_modulus_decimal(a.ctx.get(), &pa);
  fpmul_ctx_modulus_decimal(b.ctx.get(), &pb);
  bool same = take_string(pa) == take_string(pb);
  if (!same) {
    std::cerr << "error: operand moduli differ\n";
    return kExitModulusMismatch;
  }
  fpmul_config cfg = opts.to_config();
  fpmul_poly* product = nullptr;
  int rc = fpmul_multiply(a.poly.get(), b.poly.get(), &cfg, &product);
  if (rc != FPMUL_OK) {
    std::cerr << "error: " << fpmul_strerror(rc) << "\n";
    return kExitFailure;
  }
  PolyPtr guard(product);
  if (!write_poly_file(out_path, a.ctx.get(), product, err)) {
    std::cerr << "error: " << err << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

int run_explain(const std::string& p_str, std::uint64_t n, const CommonOpts& opts) {
  fpmul_ctx* ctx = nullptr;
  int rc = fpmul_ctx_new_decimal(p_str.c_str(), &ctx);
  if (rc != FPMUL_OK) {
    std::cerr << "error: " << fpmul_strerror(rc) << "\n";
    return kExitParse;
  }
  CtxPtr guard(ctx);
  fpmul_config cfg = opts.to_config();
  char* text = nullptr;
  rc = fpmul_explain(ctx, n, &cfg, &text);
  if (rc != FPMUL_OK) {
    std::cerr << "error: " << fpmul_strerror(rc) << "\n";
    return kExitFailure;
  }
  std::cout << "p: " << p_str << "\n" << "n: " << n << "\n" << take_string(text);
  return kExitOk;
}

int run_verify(std::uint64_t max_n, const std::vector<std::uint64_t>& primes, std::uint64_t seed,
               std::uint64_t cases, long long inject_fault_at) {
  fpmul_verify_opts opts;
  fpmul_verify_opts_init(&opts);
  opts.max_n = max_n;
  if (!primes.empty()) {
    opts.primes = primes.data();
    opts.num_primes = primes.size();
  }
  opts.seed = seed;
  opts.cases = cases;
  opts.inject_fault_at = inject_fault_at;

  fpmul_verify_result result;
  int rc = fpmul_verify(&opts, &result);
  if (rc != FPMUL_OK) {
    std::cerr << "error: " << fpmul_strerror(rc) << "\n";
    return kExitParse;
  }
  std::cout << "multiply vs naive:        " << result.multiply_cases << " cases\n";
  std::cout << "dft vs direct:            " << result.dft_cases << " cases\n";
  std::cout << "crandall-fagin vs naive:  " << result.cf_cases << " cases\n";
  std::cout << "bluestein vs direct:      " << result.bluestein_cases << " cases\n";
  std::cout << "total: " << result.cases_run << " cases, " << result.failures << " failures\n";
  if (result.failures != 0) {
    std::cout << "FAIL reproducer: kind=" << result.failure_kind << " p=" << result.failure_p
              << " n=" << result.failure_n << " seed=" << result.failure_seed << "\n";
    return kExitFailure;
  }
  std::cout << "PASS\n";
  return kExitOk;
}

int run_bench(const std::string& p_str, const std::string& n_range,
              const std::string& algorithms, const std::string& out_path, std::uint64_t seed) {
  fpmul_ctx* ctx_raw = nullptr;
  int rc = fpmul_ctx_new_decimal(p_str.c_str(), &ctx_raw);
  if (rc != FPMUL_OK) {
    std::cerr << "error: " << fpmul_strerror(rc) << "\n";
    return kExitParse;
  }
  CtxPtr ctx(ctx_raw);

  // Range "min..max", swept by doubling.
  std::uint64_t n_min = 0, n_max = 0;
  {
    auto pos = n_range.find("..");
    if (pos == std::string::npos) {
      std::cerr << "error: --n-range must look like 1024..65536\n";
      return kExitParse;
    }
    try {
      n_min = std::stoull(n_range.substr(0, pos));
      n_max = std::stoull(n_range.substr(pos + 2));
    } catch (...) {
      std::cerr << "error: bad --n-range\n";
      return kExitParse;
    }
  }
  std::vector<std::string> algo_list;
  {
    std::stringstream ss(algorithms);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item != "auto" && item != "kronecker" && item != "cf-fft") {
        std::cerr << "error: unknown algorithm " << item << "\n";
        return kExitParse;
      }
      algo_list.push_back(item);
    }
  }

  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!out_path.empty() && out_path != "-") {
    file.open(out_path);
    if (!file) {
      std::cerr << "error: cannot open " << out_path << "\n";
      return kExitFailure;
    }
    out = &file;
  }
  *out << "algorithm,p,n,seed,wall_nanos,result_checksum\n";

  for (std::uint64_t n = n_min; n != 0 && n <= n_max; n *= 2) {
    // Shared operands per sweep point so checksums are comparable.
    std::mt19937_64 rng(seed ^ n);
    std::vector<std::uint64_t> ca(n), cb(n);
    for (auto& c : ca) c = rng();
    for (auto& c : cb) c = rng();
    fpmul_poly* a_raw = nullptr;
    fpmul_poly* b_raw = nullptr;
    if (fpmul_poly_new_u64(ctx.get(), ca.data(), n, &a_raw) != FPMUL_OK ||
        fpmul_poly_new_u64(ctx.get(), cb.data(), n, &b_raw) != FPMUL_OK) {
      std::cerr << "error: operand construction failed\n";
      return kExitFailure;
    }
    PolyPtr a(a_raw), b(b_raw);

    bool have_checksum = false;
    std::uint64_t reference_checksum = 0;
    for (const std::string& algo : algo_list) {
      fpmul_config cfg;
      fpmul_config_init(&cfg);
      cfg.strategy = strategy_from_name(algo);
      fpmul_multiplier* mul_raw = nullptr;
      if (fpmul_multiplier_new(ctx.get(), &cfg, &mul_raw) != FPMUL_OK) {
        std::cerr << "error: multiplier construction failed\n";
        return kExitFailure;
      }
      MulPtr mul(mul_raw);

      // Warmup builds the plan; the measurement is steady-state.
      fpmul_poly* warm = nullptr;
      rc = fpmul_multiplier_multiply(mul.get(), a.get(), b.get(), &warm);
      if (rc != FPMUL_OK) {
        std::cerr << "error: " << fpmul_strerror(rc) << "\n";
        return kExitFailure;
      }
      fpmul_poly_free(warm);

      auto t0 = std::chrono::steady_clock::now();
      fpmul_poly* product = nullptr;
      rc = fpmul_multiplier_multiply(mul.get(), a.get(), b.get(), &product);
      auto t1 = std::chrono::steady_clock::now();
      if (rc != FPMUL_OK) {
        std::cerr << "error: " << fpmul_strerror(rc) << "\n";
        return kExitFailure;
      }
      PolyPtr guard(product);
      std::uint64_t checksum = 0;
      fpmul_poly_checksum(product, &checksum);
      auto nanos = std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count();
      *out << algo << "," << p_str << "," << n << "," << seed << "," << nanos << "," << checksum
           << "\n";
      if (have_checksum && checksum != reference_checksum) {
        std::cerr << "error: checksum mismatch between algorithms at n=" << n << "\n";
        return kExitFailure;
      }
      reference_checksum = checksum;
      have_checksum = true;
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fpmul: polynomial multiplication over prime fields"};
  app.require_subcommand(1);

  // mul
  std::string in_a, in_b, out_path;
  CommonOpts mul_opts;
  CLI::App* mul_cmd = app.add_subcommand("mul", "multiply two polynomial files");
  mul_cmd->add_option("in_a", in_a, "first operand file")->required();
  mul_cmd->add_option("in_b", in_b, "second operand file")->required();
  mul_cmd->add_option("out", out_path, "output file")->required();
  add_common_options(mul_cmd, mul_opts);

  // explain
  std::string explain_p = "2";
  std::uint64_t explain_n = 0;
  CommonOpts explain_opts;
  CLI::App* explain_cmd = app.add_subcommand("explain", "report the plan for a length");
  explain_cmd->add_option("--p", explain_p, "prime modulus (decimal)")->required();
  explain_cmd->add_option("--n", explain_n, "cyclic length")->required();
  add_common_options(explain_cmd, explain_opts);

  // verify
  std::uint64_t verify_max_n = 512, verify_seed = 1, verify_cases = 1200;
  long long inject_fault_at = -1;
  std::vector<std::uint64_t> verify_primes;
  CLI::App* verify_cmd = app.add_subcommand("verify", "run the oracle-equivalence sweep");
  verify_cmd->add_option("--max-n", verify_max_n, "operand length bound (default 512)");
  verify_cmd->add_option("--primes", verify_primes, "prime list (default built-in set)");
  verify_cmd->add_option("--seed", verify_seed, "sweep seed");
  verify_cmd->add_option("--cases", verify_cases, "total case count (default 1200)");
  verify_cmd->add_option("--inject-fault-at", inject_fault_at,
                         "testing aid: corrupt this case index")
      ->group("");  // hidden

  // bench
  std::string bench_p = "2", bench_range = "1024..16384", bench_algos = "auto",
              bench_out = "-";
  std::uint64_t bench_seed = 42;
  CLI::App* bench_cmd = app.add_subcommand("bench", "time multiplies over a doubling sweep");
  bench_cmd->add_option("--p", bench_p, "prime modulus (decimal, default 2)");
  bench_cmd->add_option("--n-range", bench_range, "min..max, swept by doubling");
  bench_cmd->add_option("--algorithms", bench_algos, "comma list of auto|kronecker|cf-fft");
  bench_cmd->add_option("--out", bench_out, "CSV path ('-' for stdout)");
  bench_cmd->add_option("--seed", bench_seed, "operand seed");

  CLI11_PARSE(app, argc, argv);

  if (mul_cmd->parsed()) return run_mul(in_a, in_b, out_path, mul_opts);
  if (explain_cmd->parsed()) return run_explain(explain_p, explain_n, explain_opts);
  if (verify_cmd->parsed()) {
    return run_verify(verify_max_n, verify_primes, verify_seed, verify_cases, inject_fault_at);
  }
  if (bench_cmd->parsed()) {
    return run_bench(bench_p, bench_range, bench_algos, bench_out, bench_seed);
  }
  return kExitOk;
}
