#include "powersieve/cli.hpp"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <cmath>
#include <iostream>
#include <map>
#include <stdexcept>

#include "powersieve/characters.hpp"
#include "powersieve/parallel.hpp"
#include "powersieve/sieve.hpp"
#include "powersieve/twins.hpp"
#include "powersieve/verify.hpp"

namespace powersieve::cli {

namespace {

struct Outcome {
  std::vector<Row> rows;
  std::vector<std::string> columns;
  bool passed = true;
};

template <typename T>
Outcome outcome(const std::vector<T>& items, bool passed) {
  return {to_rows(items), columns_of<T>(), passed};
}

Outcome run_twins(const RunConfig& c) {
  const std::vector<u64> xs = c.xs.empty() ? std::vector<u64>{c.x} : c.xs;
  const ErrorScan scan = error_scan(c.s, xs, c.plimit);
  bool ok = true;
  for (const TwinScanRow& r : scan.rows) ok = ok && r.count <= r.x && std::abs(r.error) < static_cast<double>(r.x);
  std::cerr << fmt::format("twins: s={} rows={} fitted_slope={}\n", c.s, scan.rows.size(),
                           format_double(scan.fitted_slope));
  return outcome(scan.rows, ok);
}

Outcome run_constant(const RunConfig& c) {
  const ConstantRow row{cs_consistency(c.s, c.plimit, c.plimit)};
  return outcome(std::vector{row}, row.check.consistent());
}

Outcome run_sieve_check(const RunConfig& c) {
  const Weights w = Weights::interval(c.s, 1, c.x);
  const SievePrimeSet ps = admissible_primes(c.s, c.qlo, c.qhi);
  if (ps.size() < 2) {
    throw UsageError(fmt::format("sieve-check: need at least two admissible primes in ({}, {}]", c.qlo, c.qhi));
  }
  const SieveRhs rhs = sieve_rhs(w, ps);
  const SigmaReport sig = sigma_quantity(w, ps);
  SieveCheckRow row;
  row.s = c.s;
  row.x = c.x;
  row.qlo = c.qlo;
  row.qhi = c.qhi;
  row.P = ps.size();
  row.density_ratio = ps.density_ratio();
  row.lhs = sieve_lhs(w);
  row.term1 = rhs.term1;
  row.term2 = rhs.term2;
  row.rhs_total = rhs.total();
  row.lhs_over_rhs = row.lhs / row.rhs_total;
  row.support_bound_ok = rhs.support_bound_ok;
  row.sigma = sig.sigma;
  row.expansion_residual = sig.residual;
  row.passed = sig.expansion_ok() && row.lhs <= 10.0 * row.rhs_total;
  std::cerr << fmt::format("sieve-check: P={} support {} e^P\n", row.P,
                           rhs.support_bound_ok ? "within" : "exceeds");
  return outcome(std::vector{row}, row.passed);
}

Outcome run_expsum_check(const RunConfig& c) {
  if (c.suite == ExpsumSuite::factorization) {
    std::vector<FactorizationRow> rows;
    bool ok = true;
    for (const ExpSumParams& params : verify::random_tuples(c.seed, c.tuples)) {
      rows.push_back({params, verify_factorization(params)});
      ok = ok && rows.back().check.passed();
    }
    return outcome(rows, ok);
  }
  const bool lemma = c.suite == ExpsumSuite::lemma_ii;
  std::vector<BoundCheckRow> rows;
  bool ok = true;
  for (u64 p : primes_up_to(c.qhi)) {
    if (p <= c.qlo || p == 2) continue;
    if (lemma && !is_admissible(p, c.s)) continue;
    for (int sign : {1, -1}) {
      const BoundReport r = lemma ? s2_bound_check(p, c.s, sign) : chalk_smith_check(p, c.s, sign);
      rows.push_back({lemma ? "s2_bound" : "chalk_smith", c.s, fmt::format("p={};sign={:+d}", p, sign), r.cases,
                      r.violations, r.max_ratio, r.passed()});
      ok = ok && r.passed();
    }
  }
  return outcome(rows, ok);
}

Outcome run_hensel_check(const RunConfig& c) {
  const std::vector<BoundCheckRow> rows = {verify::hensel_oracle(c.s, c.x), verify::hensel_bound(c.s, c.x)};
  return outcome(rows, rows[0].passed && rows[1].passed);
}

Outcome run_exponents(const RunConfig& c) {
  const ExponentRow row{exponent_table(c.s)};
  return outcome(std::vector{row}, row.table.ordered());
}

Outcome run_verify_all(const RunConfig& c) {
  const std::vector<BoundCheckRow> rows = verify::all(c.seed);
  u64 failed = 0;
  for (const BoundCheckRow& r : rows) {
    if (!r.passed) {
      ++failed;
      std::cerr << fmt::format("FAILED {} (s={}, {}): {} of {} cases\n", r.check, r.s, r.params, r.violations,
                               r.cases);
    }
  }
  std::cerr << fmt::format("verify-all: seed {}, {} suites, {} failed\n", c.seed, rows.size(), failed);
  return outcome(rows, failed == 0);
}

}  // namespace

int run(const RunConfig& config) {
  if (config.threads) set_thread_count(config.threads);
  try {
    if (config.s < 2) throw UsageError("--s must be at least 2");
    Outcome o;
    switch (config.command) {
      case Command::twins: o = run_twins(config); break;
      case Command::constant: o = run_constant(config); break;
      case Command::sieve_check: o = run_sieve_check(config); break;
      case Command::expsum_check: o = run_expsum_check(config); break;
      case Command::hensel_check: o = run_hensel_check(config); break;
      case Command::exponents: o = run_exponents(config); break;
      case Command::verify_all: o = run_verify_all(config); break;
    }
    emit_report(o.rows, config.format, config.out, o.columns);
    if (config.threads) set_thread_count(0);
    return o.passed ? 0 : 1;
  } catch (const std::exception& e) {
    // bad parameters surface as invalid_argument / overflow from the library
    if (config.threads) set_thread_count(0);
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}

int main(int argc, char** argv) {
  CLI::App app{"Power sieve for s-th powers: twin s-free counts, character and exponential sum checks"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  RunConfig config;
  std::string format = "json";
  std::string suite = "lemma-ii";

  struct Sub {
    CLI::App* app;
    Command command;
  };
  std::vector<Sub> subs;
  auto add = [&](const char* name, const char* help, Command command) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--s", config.s, "Power s >= 2")->capture_default_str();
    sub->add_option("--out", config.out, "Report path ('-' for stdout)")->capture_default_str();
    sub->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    subs.push_back({sub, command});
    return sub;
  };

  CLI::App* twins = add("twins", "Twin s-free counts against C_s x", Command::twins);
  twins->add_option("--x", config.x, "Upper limit");
  twins->add_option("--xs", config.xs, "Comma-separated ascending limits")->delimiter(',');
  twins->add_option("--plimit", config.plimit, "Euler product truncation");

  CLI::App* constant = add("constant", "C_s by Euler product and Dirichlet series", Command::constant);
  constant->add_option("--plimit", config.plimit, "Truncation point for both routes");

  CLI::App* sieve = add("sieve-check", "Power sieve on the interval weight [1, x]", Command::sieve_check);
  sieve->add_option("--x", config.x, "Interval end (default 10000)");
  sieve->add_option("--qlo", config.qlo, "Primes p > qlo");
  sieve->add_option("--qhi", config.qhi, "Primes p <= qhi");

  CLI::App* expsum = add("expsum-check", "Exponential sum bounds and the factorization lemma", Command::expsum_check);
  expsum->add_option("--suite", suite, "Which check")
      ->check(CLI::IsMember({"lemma-ii", "chalk-smith", "factorization"}))
      ->capture_default_str();
  expsum->add_option("--qlo", config.qlo, "Primes p > qlo (default 2)");
  expsum->add_option("--qhi", config.qhi, "Primes p <= qhi (default 100)");
  expsum->add_option("--seed", config.seed, "Tuple generator seed")->capture_default_str();
  expsum->add_option("--tuples", config.tuples, "Random tuples for the factorization suite")->capture_default_str();

  CLI::App* hensel = add("hensel-check", "Hensel counts against an exhaustive scan", Command::hensel_check);
  hensel->add_option("--x", config.x, "Bound on u and k (default 40)");

  add("exponents", "Exponent table for s", Command::exponents);

  CLI::App* all = add("verify-all", "Every invariant suite", Command::verify_all);
  all->add_option("--seed", config.seed, "Seed for randomized suites")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  for (const Sub& sub : subs) {
    if (!sub.app->parsed()) continue;
    config.command = sub.command;
    auto unset = [&](const char* name) {
      const CLI::Option* opt = sub.app->get_option_no_throw(name);
      return opt == nullptr || opt->count() == 0;
    };
    switch (sub.command) {
      case Command::sieve_check:
        if (unset("--x")) config.x = 10000;
        break;
      case Command::expsum_check:
        if (unset("--qlo")) config.qlo = 2;
        if (unset("--qhi")) config.qhi = 100;
        break;
      case Command::hensel_check:
        if (unset("--x")) config.x = 40;
        break;
      default:
        break;
    }
  }
  config.format = format == "csv" ? Format::csv : Format::json;
  static const std::map<std::string, ExpsumSuite> suites = {{"lemma-ii", ExpsumSuite::lemma_ii},
                                                            {"chalk-smith", ExpsumSuite::chalk_smith},
                                                            {"factorization", ExpsumSuite::factorization}};
  config.suite = suites.at(suite);
  return run(config);
}

}  // namespace powersieve::cli
