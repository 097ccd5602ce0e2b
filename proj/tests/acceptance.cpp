// Acceptance run: one PASS/FAIL line per criterion. Tolerances and time
// limits live here and nowhere else.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "powersieve/cli.hpp"
#include "powersieve/sieve.hpp"
#include "powersieve/twins.hpp"
#include "powersieve/verify.hpp"

using namespace powersieve;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;

  void require(const BoundCheckRow& r) {
    passed = passed && r.passed;
    if (!detail.empty()) detail += "; ";
    detail += fmt::format("{}[s={}] {}/{} max_ratio={:.3g}", r.check, r.s, r.cases - r.violations, r.cases,
                          r.max_ratio);
  }
  void require(bool ok, const std::string& what) {
    passed = passed && ok;
    if (!ok) detail += (detail.empty() ? "" : "; ") + ("failed: " + what);
  }
  void note(const std::string& text) { detail += (detail.empty() ? "" : "; ") + text; }
};

struct Criterion {
  int id;
  std::string name;
  double limit_seconds;  // 0: no time limit
  std::function<Outcome()> body;
};

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome check_twin_oracle() {
  Outcome o;
  for (unsigned s : {2u, 3u, 4u}) o.require(verify::twin_oracle(s, 100000));
  o.require(count_twin_sfree(2, 20) == 7, "count_twin_sfree(2, 20) == 7");
  return o;
}

Outcome check_decomposition() {
  Outcome o;
  for (unsigned s : {2u, 3u}) o.require(verify::twin_decomposition(s, 10000));
  return o;
}

Outcome check_constant() {
  Outcome o;
  o.require(verify::constant_consistency(2, 1000000));
  const ConstantCheck c = cs_consistency(2, 1000000, 1000000);
  o.require(c.difference <= 1e-4, "Euler product vs Dirichlet series within 1e-4");
  o.note(fmt::format("difference={:.3g}", c.difference));
  return o;
}

Outcome check_envelope() {
  Outcome o;
  o.require(verify::error_envelope(2, {10000, 100000, 1000000, 10000000}, 1000000));
  return o;
}

Outcome check_s2_bound() {
  Outcome o;
  for (unsigned s : {2u, 3u, 4u}) o.require(verify::s2_bound(s, 100));
  return o;
}

Outcome check_factorization() {
  Outcome o;
  o.require(verify::factorization_grid());
  o.require(verify::factorization_random(verify::kDefaultSeed, 200));
  return o;
}

Outcome check_gauss() {
  Outcome o;
  for (unsigned s : {2u, 3u, 4u, 5u}) o.require(verify::gauss_sums(s, 200));
  return o;
}

Outcome check_hensel() {
  Outcome o;
  for (unsigned s : {2u, 3u, 4u, 5u}) o.require(verify::hensel_oracle(s, 40));
  for (unsigned s : {2u, 3u, 4u, 5u}) o.require(verify::hensel_bound(s, 40));
  return o;
}

Outcome check_remark_a() {
  Outcome o;
  o.require(verify::remark_a({3, 5}, 2));
  const RemarkAReport r = remark_a_counterexample(SievePrimeSet::from_primes(2, {3, 5}));
  o.require(r.lhs == 1.0, "sieve_lhs == 1");
  o.require(r.rhs.term1 == 0.5 && r.rhs.term2 == 0.0, "sieve_rhs == (1/2, 0)");
  o.require(r.support_bound_violated, "support bound flagged");
  return o;
}

Outcome check_sieve_identities() {
  Outcome o;
  o.require(verify::sigma_expansion());
  o.require(verify::inner_count(1000));
  // lhs <= 10 rhs is an empirical constant: reported, not asserted
  for (u64 Q : {20, 50}) {
    const Weights w = Weights::interval(2, 1, 10000);
    const SievePrimeSet ps = admissible_primes(2, Q, 2 * Q);
    const double lhs = sieve_lhs(w);
    const SieveRhs rhs = sieve_rhs(w, ps);
    o.require(sigma_quantity(w, ps).expansion_ok(), fmt::format("sigma expansion on [1, 10^4], Q={}", Q));
    o.note(fmt::format("Q={} lhs/rhs={:.3g}{}", Q, lhs / rhs.total(), lhs <= 10 * rhs.total() ? "" : " (exceeds 10)"));
  }
  return o;
}

Outcome check_exponents() {
  Outcome o;
  const ExponentTable t = exponent_table(2);
  o.require(t.carlitz.str() == "2/3", "carlitz == 2/3");
  o.require(t.improved.str() == "7/11", "new == 7/11");
  o.require(t.aux.str() == "51/88", "aux == 51/88");
  o.require(verify::exponent_order(100));
  return o;
}

Outcome check_quadruples() {
  Outcome o;
  o.require(verify::quadruple_envelope(2, {1000, 10000}, {2, 5, 10, 20}));
  return o;
}

Outcome check_determinism() {
  Outcome o;
  std::vector<std::string> reports;
  for (unsigned threads : {1u, 4u}) {
    cli::RunConfig c;
    c.command = cli::Command::verify_all;
    c.seed = verify::kDefaultSeed;
    c.threads = threads;
    c.out = (std::filesystem::temp_directory_path() / fmt::format("powersieve_accept_{}.json", threads)).string();
    const int code = cli::run(c);
    o.require(code == 0, fmt::format("verify-all exit code {} with {} threads", code, threads));
    reports.push_back(slurp(c.out));
    std::filesystem::remove(c.out);
  }
  o.require(!reports[0].empty() && reports[0] == reports[1], "reports byte-identical for 1 and 4 threads");
  o.note(fmt::format("{} bytes", reports[0].size()));
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "twin-count oracle", 30, check_twin_oracle},
      {2, "decomposition identity", 60, check_decomposition},
      {3, "constant consistency", 10, check_constant},
      {4, "error envelope", 300, check_envelope},
      {5, "S2 bound, zero violations", 300, check_s2_bound},
      {6, "factorization lemma", 600, check_factorization},
      {7, "Gauss sums", 5, check_gauss},
      {8, "Hensel oracle and bound", 120, check_hensel},
      {9, "remark (a) counterexample", 1, check_remark_a},
      {10, "sigma and inner-count identities", 60, check_sieve_identities},
      {11, "exponent table", 1, check_exponents},
      {12, "quadruple envelope", 120, check_quadruples},
      {13, "determinism across thread counts", 0, check_determinism},
  };

  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o.passed = false;
      o.detail = fmt::format("exception: {}", e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.limit_seconds == 0 || secs < c.limit_seconds;
    const bool ok = o.passed && in_time;
    failed += !ok;
    const std::string limit = c.limit_seconds == 0 ? "" : fmt::format(" < {:g}s", c.limit_seconds);
    fmt::print("{} {:2d} {} ({:.2f}s{}{}) {}\n", ok ? "PASS" : "FAIL", c.id, c.name, secs, limit,
               in_time ? "" : " OVER TIME", o.detail);
    std::fflush(stdout);
  }
  fmt::print("{} of {} criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
