#include "powersieve/verify.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "powersieve/arithmetic.hpp"
#include "powersieve/characters.hpp"
#include "powersieve/oracles.hpp"
#include "powersieve/parallel.hpp"
#include "powersieve/sieve.hpp"
#include "powersieve/twins.hpp"

namespace powersieve::verify {

namespace {

struct Tally {
  u64 cases = 0;
  u64 violations = 0;
  double max_ratio = 0.0;

  void check(bool ok) {
    ++cases;
    if (!ok) ++violations;
  }
  void ratio(double r) {
    if (std::isfinite(r)) max_ratio = std::max(max_ratio, r);
  }
  Tally& operator+=(const Tally& o) {
    cases += o.cases;
    violations += o.violations;
    max_ratio = std::max(max_ratio, o.max_ratio);
    return *this;
  }
};

Tally merge(const std::vector<Tally>& parts) {
  Tally out;
  for (const Tally& t : parts) out += t;
  return out;
}

BoundCheckRow row(std::string check, unsigned s, std::string params, const Tally& t) {
  return {std::move(check), s, std::move(params), t.cases, t.violations, t.max_ratio, t.violations == 0 && t.cases > 0};
}

// Number of distinct primes dividing n, by plain trial division.
unsigned distinct_primes(u64 n) {
  unsigned count = 0;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    ++count;
    while (n % d == 0) n /= d;
  }
  return count + (n > 1 ? 1 : 0);
}

bool squarefull_by_trial(u64 n) {
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    unsigned e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e < 2) return false;
  }
  return n == 1;
}

std::vector<u64> admissible_up_to(unsigned s, u64 limit) {
  std::vector<u64> out;
  for (u64 p : primes_up_to(limit)) {
    if (p > 2 && is_admissible(p, s)) out.push_back(p);
  }
  return out;
}

std::string list(const std::vector<u64>& xs) {
  return fmt::format("{}", fmt::join(xs, ","));
}

double ipow(double base, unsigned e) {
  double r = 1.0;
  for (unsigned i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

std::vector<ExpSumParams> random_tuples(u64 seed, std::size_t count, u64 cap) {
  std::mt19937_64 rng(seed);
  std::vector<ExpSumParams> out;
  std::vector<std::vector<u64>> pools(5);
  for (unsigned s = 2; s <= 4; ++s) pools[s] = admissible_up_to(s, cap / 3);
  while (out.size() < count) {
    ExpSumParams t;
    t.s = static_cast<unsigned>(2 + rng() % 3);
    const auto& pool = pools[t.s];
    t.p = pool[rng() % pool.size()];
    t.q = pool[rng() % pool.size()];
    if (t.p == t.q || t.p * t.q > cap) continue;
    t.u = 1 + rng() % (cap / (t.p * t.q));
    if (std::gcd(t.u, t.p * t.q) != 1) continue;
    const u64 M = t.modulus();
    t.gamma = static_cast<i64>(rng() % M);
    t.delta = static_cast<i64>(rng() % M);
    t.sign = (rng() & 1) ? 1 : -1;
    const u64 dp = std::gcd<u64>(t.s, t.p - 1), dq = std::gcd<u64>(t.s, t.q - 1);
    t.power_p = 1 + rng() % (dp - 1);
    t.power_q = 1 + rng() % (dq - 1);
    out.push_back(t);
  }
  return out;
}

// ---------------------------------------------------------------------
// arithmetic
// ---------------------------------------------------------------------

BoundCheckRow mobius_agreement(u64 N) {
  const std::vector<int> mu = oracle::mobius_sieve(N);
  Tally t;
  for (u64 n = 1; n <= N; ++n) t.check(mobius(n) == mu[n]);
  return row("mobius_agreement", 0, fmt::format("n<={}", N), t);
}

BoundCheckRow sfree_indicator(unsigned s, u64 N) {
  const std::vector<int> mu = oracle::mobius_sieve(iroot(N, s));
  const SfreeSegment seg = sfree_segment(s, 1, N);
  Tally t;
  for (u64 n = 1; n <= N; ++n) {
    int E = 0;
    for (u64 j = 1; checked_pow(j, s) <= n; ++j) {
      if (n % checked_pow(j, s) == 0) E += mu[j];
    }
    t.check((E == 0 || E == 1) && seg.is_sfree(n) == (E == 1) && seg.is_sfree(n) == oracle::is_sfree(n, s));
  }
  return row("sfree_indicator", s, fmt::format("n<={}", N), t);
}

BoundCheckRow squarefull_split(u64 N) {
  const std::vector<int> mu = oracle::mobius_sieve(N);
  Tally t;
  for (u64 u = 1; u <= N; ++u) {
    const auto [w, q] = squarefull_decompose(u);
    t.check(w * q == u && mu[w] * mu[w] == 1 && squarefull_by_trial(q) && std::gcd(w, q) == 1);
  }
  return row("squarefull_split", 0, fmt::format("u<={}", N), t);
}

BoundCheckRow squarefull_count(u64 Z) {
  const std::vector<u64> prefix = oracle::squarefull_prefix(Z);
  const std::size_t tasks = 64;
  const auto parts = parallel_map(tasks, [&](std::size_t i) {
    Tally t;
    for (u64 z = 1 + i; z <= Z; z += tasks) {
      const u64 c = count_squarefull(z);
      const double r = static_cast<double>(c) / std::sqrt(static_cast<double>(z));
      t.check(c == prefix[z] && r <= 3.0);
      t.ratio(r);
    }
    return t;
  });
  return row("squarefull_count", 0, fmt::format("z<={};C=3", Z), merge(parts));
}

BoundCheckRow divisor_power(unsigned s, u64 N) {
  const std::vector<int> mu = oracle::mobius_sieve(N);
  const unsigned k = s * (s + 1);
  Tally t;
  for (u64 w = 1; w <= N; ++w) {
    if (mu[w] == 0) continue;
    t.check(divisor_count(w, k) == checked_pow(k, distinct_primes(w)));
  }
  return row("divisor_power", s, fmt::format("squarefree w<={};k={}", N, k), t);
}

// ---------------------------------------------------------------------
// characters
// ---------------------------------------------------------------------

BoundCheckRow character_properties(unsigned s, u64 pmax) {
  const std::vector<u64> primes = admissible_up_to(s, pmax);
  const auto parts = parallel_map(primes.size(), [&](std::size_t i) {
    const u64 p = primes[i];
    Tally t;
    const unsigned d = static_cast<unsigned>(std::gcd<u64>(s, p - 1));
    for (u64 j = 1; j < d; ++j) {
      const Character chi(p, s, j);
      const oracle::Char ref(p, s, j);
      for (u64 a = 0; a < p; ++a) {
        for (u64 b = 0; b < p; ++b) {
          const auto ea = chi.exponent(a), eb = chi.exponent(b), eab = chi.exponent(a * b % p);
          const bool mult = (ea && eb) ? (eab && *eab == (*ea + *eb) % d) : !eab;
          t.check(mult);
        }
        t.check(std::abs(chi(a) - ref(static_cast<i64>(a))) <= 1e-12);
        if (a > 0) {
          const auto e = chi.exponent(powmod(a, s, p));
          t.check(e && *e == 0);
        }
      }
      KahanSum<cplx> total;
      for (u64 n = 1; n <= p; ++n) total += chi(n);
      t.check(std::abs(total.value()) <= 1e-9);
      t.check(chi.exponent(chi.generator()) != 0u);
      t.ratio(std::abs(total.value()));
    }
    return t;
  });
  return row("character_properties", s, fmt::format("admissible p<={};all powers", pmax), merge(parts));
}

BoundCheckRow gauss_sums(unsigned s, u64 pmax) {
  Tally t;
  for (u64 p : admissible_up_to(s, pmax)) {
    const cplx tau = gauss_sum(order_s_character(p, s));
    const double err = std::abs(std::norm(tau) - static_cast<double>(p));
    t.check(err <= 1e-6 && std::abs(tau - oracle::gauss_sum(p, s)) <= 1e-9);
    t.ratio(err);
  }
  return row("gauss_sum_modulus", s, fmt::format("admissible p<={};tol=1e-6", pmax), t);
}

BoundCheckRow pair_sum_period(unsigned s) {
  const std::vector<u64> primes = admissible_up_to(s, 60);
  Tally t;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    for (std::size_t j = i + 1; j < primes.size(); ++j) {
      const u64 p = primes[i], q = primes[j];
      t.check(std::abs(pair_char_sum(p, q, s, p * q)) <= 1e-6);
      const cplx partial = pair_char_sum(p, q, s, 1000);
      t.check(std::abs(partial - oracle::pair_sum(p, q, s, 1000)) <= 1e-9);
      t.ratio(polya_vinogradov_ratio(partial, p, q));
    }
  }
  return row("pair_sum_period", s, "admissible p<q<=60;x=pq,1000", t);
}

// ---------------------------------------------------------------------
// sieve
// ---------------------------------------------------------------------

BoundCheckRow remark_a(const std::vector<u64>& primes, unsigned s) {
  const RemarkAReport r = remark_a_counterexample(SievePrimeSet::from_primes(s, primes));
  Tally t;
  t.check(r.exact && r.lhs == 1.0 && r.rhs.term2 == 0.0);
  t.check(r.support_bound_violated);
  t.ratio(r.lhs / r.rhs.total());
  return row("remark_a", s, "primes=" + list(primes), t);
}

BoundCheckRow sigma_expansion() {
  struct Case {
    Weights w;
    SievePrimeSet pset;
  };
  std::vector<Case> cases;
  const std::vector<SievePrimeSet> sets2 = {SievePrimeSet::from_primes(2, {3, 5, 7}), admissible_primes(2, 10, 20),
                                            admissible_primes(2, 10, 40)};
  const std::vector<SievePrimeSet> sets3 = {SievePrimeSet::from_primes(3, {7, 13}), admissible_primes(3, 2, 50),
                                            SievePrimeSet::from_primes(3, {7, 13, 19}, 2)};
  Weights squares(2), cubes(3), scattered(2);
  for (u64 m = 1; m * m <= 10000; ++m) squares.set(m * m, 1.0);
  for (u64 m = 1; m * m * m <= 1000000; ++m) cubes.set(m * m * m, 1.0);
  for (u64 n = 1; n <= 5000; n += 37) scattered.set(n, 1.0 + static_cast<double>(n % 5) / 4.0);
  for (const auto& ps : sets2) {
    for (const Weights& w : {Weights::point(2, 1), Weights::interval(2, 1, 100), Weights::interval(2, 1, 10000),
                             squares, scattered}) {
      cases.push_back({w, ps});
    }
    u64 m = 1;
    for (u64 p : ps.primes()) m *= p;
    if (m <= 100000) cases.push_back({Weights::point(2, m * m), ps});
  }
  for (const auto& ps : sets3) {
    for (const Weights& w : {Weights::point(3, 1), Weights::interval(3, 1, 1000), cubes}) cases.push_back({w, ps});
  }

  Tally t;
  for (const Case& c : cases) {
    const SigmaReport r = sigma_quantity(c.w, c.pset);
    const double P = static_cast<double>(c.pset.size());
    t.check(r.expansion_ok());
    t.ratio(r.residual);
    // diagonal <= P sum w, with equality iff no prime divides a support point
    bool touched = false;
    unsigned worst_nu = 0;
    for (const auto& [n, value] : c.w.support()) {
      unsigned nu = 0;
      for (u64 p : c.pset.primes()) nu += (n % p == 0);
      touched = touched || nu > 0;
      u64 root = 0;
      if (is_perfect_power(n, c.w.s(), &root)) {
        unsigned nu_root = 0;
        for (u64 p : c.pset.primes()) nu_root += (root % p == 0);
        worst_nu = std::max(worst_nu, nu_root);
      }
    }
    const double full = P * r.weight_total;
    t.check(r.diagonal <= full * (1 + 1e-12) && (touched ? r.diagonal < full * (1 - 1e-12)
                                                          : std::abs(r.diagonal - full) <= 1e-9 * full));
    const double lhs = sieve_lhs(c.w);
    const double floor_pw = (P - worst_nu) * (P - worst_nu) * lhs;
    t.check(r.sigma >= floor_pw * (1 - 1e-9));
    if (2 * worst_nu <= P) t.check(r.sigma >= (P / 2) * (P / 2) * lhs * (1 - 1e-9));
  }
  return row("sigma_expansion", 0, fmt::format("weights={};tol=1e-6", cases.size()), t);
}

BoundCheckRow inner_count(u64 mmax) {
  const std::vector<SievePrimeSet> sets = {SievePrimeSet::from_primes(2, {3, 5, 7}), admissible_primes(2, 2, 100),
                                           admissible_primes(3, 2, 50), admissible_primes(4, 2, 60)};
  Tally t;
  for (const SievePrimeSet& ps : sets) {
    for (u64 m = 1; m <= mmax; ++m) {
      const InnerCount c = inner_count_identity(m, ps);
      t.check(c.agree());
    }
    u64 prod = 1;
    bool fits = true;
    for (u64 p : ps.primes()) {
      if (prod > (u64{1} << 20) / p) fits = false;
      if (fits) prod *= p;
    }
    if (fits) t.check(inner_count_identity(prod, ps).via_characters == 0);
  }
  return row("inner_count", 0, fmt::format("m<={};sets={}", mmax, sets.size()), t);
}

BoundCheckRow interval_sieve(unsigned s, u64 x, u64 Q) {
  const Weights w = Weights::interval(s, 1, x);
  const SievePrimeSet ps = admissible_primes(s, Q, 2 * Q);
  const double lhs = sieve_lhs(w);
  const SieveRhs rhs = sieve_rhs(w, ps);
  const SigmaReport sig = sigma_quantity(w, ps);
  Tally t;
  t.check(lhs <= 10.0 * rhs.total());
  t.check(sig.expansion_ok());
  t.ratio(lhs / rhs.total());
  return row("interval_sieve", s,
             fmt::format("x={};Q={};P={};support_bound_ok={};C=10", x, Q, ps.size(), rhs.support_bound_ok), t);
}

BoundCheckRow twin_weight_micro(unsigned s, u64 limit) {
  const auto parts = parallel_map(limit, [&](std::size_t i) {
    const u64 U = i + 1;
    Tally t;
    for (int sign : {1, -1}) {
      for (u64 J = 1; J <= 2; ++J) {
        for (u64 u = U + 1; u <= 2 * U; ++u) {
          const u64 x = checked_pow(2, s + 1) * checked_pow(J, s) * U + 1;
          for (u64 K = 1; K <= limit; ++K) {
            const u64 Nu = count_N_u(s, x, u, J, K, sign);
            const double lhs = sieve_lhs(twin_weights(s, u, J, K, U, sign));
            t.check(static_cast<double>(Nu) <= lhs);
            if (lhs > 0) t.ratio(static_cast<double>(Nu) / lhs);
          }
        }
      }
    }
    return t;
  });
  return row("twin_weight_micro", s, fmt::format("U,K<={};J<=2;u in (U,2U];N_u<=S(A)", limit), merge(parts));
}

// ---------------------------------------------------------------------
// exponential sums
// ---------------------------------------------------------------------

BoundCheckRow s2_bound(unsigned s, u64 pmax) {
  Tally t;
  for (u64 p : admissible_up_to(s, pmax - 1)) {
    for (int sign : {1, -1}) {
      const BoundReport r = s2_bound_check(p, s, sign);
      t += Tally{r.cases, r.violations, r.max_ratio};
    }
  }
  return row("s2_bound", s, fmt::format("admissible p<{};all (c,d);both signs", pmax), t);
}

BoundCheckRow s2_elimination(unsigned s, u64 pmax) {
  std::vector<std::pair<u64, unsigned>> moduli;
  for (u64 p : primes_up_to(pmax)) moduli.emplace_back(p, 1);
  for (u64 r : {2, 3, 5, 7}) moduli.emplace_back(r, 2);
  const auto parts = parallel_map(moduli.size(), [&](std::size_t i) {
    const auto [r, f] = moduli[i];
    const u64 m = checked_pow(r, f);
    Tally t;
    for (int sign : {1, -1}) {
      for (i64 c = 0; c < static_cast<i64>(m); ++c) {
        for (i64 d = 0; d < static_cast<i64>(m); ++d) {
          const cplx ref = oracle::s2(m, s, c, d, sign);
          const cplx got = s2(r, f, s, c, d, sign);
          const double diff = std::abs(got - ref);
          t.check(diff <= 1e-9 && std::abs(got) <= static_cast<double>(m) + 1e-9);
          t.ratio(diff);
        }
      }
    }
    return t;
  });
  return row("s2_oracle", s, fmt::format("p<={} (f=1);r in 2,3,5,7 (f=2)", pmax), merge(parts));
}

BoundCheckRow chalk_smith(u64 p, unsigned s, int sign) {
  const BoundReport r = chalk_smith_check(p, s, sign);
  return row("chalk_smith", s, fmt::format("p={};sign={:+d}", p, sign), Tally{r.cases, r.violations, r.max_ratio});
}

BoundCheckRow s1_split(unsigned s, u64 pmax) {
  const std::vector<u64> primes = admissible_up_to(s, pmax);
  const auto parts = parallel_map(primes.size(), [&](std::size_t i) {
    const u64 p = primes[i];
    const Character chi = order_s_character(p, s);
    const PrimeS2 two(p, s);
    const double sp = std::sqrt(static_cast<double>(p));
    Tally t;
    for (int sign : {1, -1}) {
      for (i64 c = 0; c < static_cast<i64>(p); ++c) {
        for (i64 d = 0; d < static_cast<i64>(p); ++d) {
          const cplx one = s1(chi, c, d, sign);
          t.check(std::abs(one - oracle::s1(p, s, c, d, sign)) <= 1e-9);
          t.check(std::abs(one) <= s1_bound(p, s));
          if (c == 0 || d == 0) continue;
          const double bound = std::abs(two(c, d, sign)) * sp + 2.0 * static_cast<double>(p);
          t.check(std::abs(one) <= bound);
          t.ratio(std::abs(one) / bound);
        }
      }
    }
    return t;
  });
  return row("s1_split", s, fmt::format("admissible p<={};|S1|<=|S2|sqrt(p)+2p", pmax), merge(parts));
}

BoundCheckRow factorization_grid() {
  std::vector<ExpSumParams> grid;
  for (u64 u : {1, 2, 3, 4, 8, 9}) {
    for (auto [p, q] : {std::pair<u64, u64>{7, 13}, {13, 19}}) {
      for (i64 g = 0; g <= 2; ++g) {
        for (i64 h = 0; h <= 2; ++h) {
          for (int sign : {1, -1}) {
            ExpSumParams t;
            t.u = u;
            t.p = p;
            t.q = q;
            t.s = 3;
            t.gamma = g;
            t.delta = h;
            t.sign = sign;
            grid.push_back(t);
          }
        }
      }
    }
  }
  Tally t;
  for (const ExpSumParams& params : grid) {
    const FactorizationCheck c = verify_factorization(params);
    t.check(c.passed());
    t.ratio(c.residual);
  }
  return row("factorization_grid", 3, "u in 1,2,3,4,8,9;(p,q) in (7,13),(13,19);gamma,delta<=2;tol=1e-6", t);
}

BoundCheckRow factorization_random(u64 seed, std::size_t count) {
  Tally t;
  for (const ExpSumParams& params : random_tuples(seed, count)) {
    const FactorizationCheck c = verify_factorization(params);
    t.check(c.passed());
    t.ratio(c.residual);
  }
  return row("factorization_random", 0, fmt::format("seed={};tuples={};upq<={};tol=1e-6", seed, count, kFullSumModulusCap),
             t);
}

BoundCheckRow crt_gcd_transfer(u64 seed, std::size_t count) {
  Tally t;
  for (const ExpSumParams& x : random_tuples(seed, count)) {
    const u64 M = x.modulus();
    const CrtCoefficients cd = crt_cd(x.u, x.p, x.q, x.gamma, x.delta);
    auto holds = [&](u64 c, i64 g) {
      const u64 gm = reduce_signed(g, M);
      return c < M && (x.q * x.u % x.p) * c % x.p == gm % x.p && (x.p * x.u % x.q) * c % x.q == gm % x.q &&
             (x.p * x.q % x.u) * c % x.u == gm % x.u && std::gcd(c, M) == std::gcd(gm, M);
    };
    t.check(holds(cd.c, x.gamma) && holds(cd.d, x.delta));
  }
  return row("crt_gcd_transfer", 0, fmt::format("seed={};tuples={}", seed, count), t);
}

BoundCheckRow completion_sums(u64 seed, std::size_t draws) {
  std::mt19937_64 rng(seed);
  Tally t;
  for (std::size_t i = 0; i < draws; ++i) {
    const i64 lo = static_cast<i64>(rng() % 2001) - 1000;
    const i64 hi = lo + static_cast<i64>(rng() % 1001);
    const u64 m = 1 + rng() % 1000;
    const i64 freq = static_cast<i64>(rng() % 2000001) - 1000000;
    const cplx closed = completion_sum(lo, hi, freq, m);
    const cplx direct = oracle::completion_sum(lo, hi, freq, m);
    const double bound = completion_bound(lo, hi, freq, m);
    t.check(std::abs(closed - direct) <= 1e-9 * std::max(1.0, std::abs(direct)) && std::abs(closed) <= bound);
    t.ratio(std::abs(closed) / bound);
  }
  return row("completion_sum", 0, fmt::format("seed={};draws={};tol=1e-9", seed, draws), t);
}

// ---------------------------------------------------------------------
// twins
// ---------------------------------------------------------------------

BoundCheckRow twin_oracle(unsigned s, u64 X) {
  const std::vector<u64> ref = oracle::twin_prefix(s, X);
  std::vector<u64> xs(X);
  std::iota(xs.begin(), xs.end(), u64{1});
  const std::vector<u64> got = twin_prefix_counts(s, xs);
  Tally t;
  for (u64 x = 1; x <= X; ++x) t.check(got[x - 1] == ref[x]);
  // the single-x entry point at a spread of points
  for (u64 x = 1; x <= X; x = x * 3 + 1) t.check(count_twin_sfree(s, x) == ref[x]);
  t.check(count_twin_sfree(s, X) == ref[X]);
  return row("twin_count_oracle", s, fmt::format("x<={}", X), t);
}

BoundCheckRow twin_decomposition(unsigned s, u64 X) {
  const std::vector<u64> ref = oracle::twin_prefix(s, X);
  const std::size_t tasks = 64;
  const auto parts = parallel_map(tasks, [&](std::size_t i) {
    Tally t;
    for (u64 x = 1 + i; x <= X; x += tasks) {
      t.check(twin_count_by_decomposition(s, x) == static_cast<i64>(ref[x]));
    }
    return t;
  });
  return row("twin_decomposition", s, fmt::format("x<={};k<=(x+1)^(1/s)", X), merge(parts));
}

BoundCheckRow constant_consistency(unsigned s, u64 plimit) {
  const ConstantCheck c = cs_consistency(s, plimit, plimit);
  Tally t;
  t.check(c.consistent() && c.difference <= 1e-4);
  t.ratio(c.difference / c.allowed);
  // successive truncations: each differs from the next by less than its tail
  std::vector<u64> limits;
  for (u64 L = std::max<u64>(plimit / 1000, 10); L < plimit; L *= 10) limits.push_back(L);
  limits.push_back(plimit);
  for (std::size_t i = 0; i + 1 < limits.size(); ++i) {
    const CsConstant a = cs_constant(s, limits[i]), b = cs_constant(s, limits[i + 1]);
    const double gap = std::abs(a.value - b.value);
    t.check(gap < a.abs_error());
    t.ratio(gap / a.abs_error());
  }
  return row("constant_consistency", s, fmt::format("plimit={};dirichlet_terms={};tol=1e-4", plimit, plimit), t);
}

BoundCheckRow error_envelope(unsigned s, const std::vector<u64>& xs, u64 plimit) {
  const ErrorScan scan = error_scan(s, xs, plimit);
  Tally t;
  for (const TwinScanRow& r : scan.rows) {
    const double envelope = std::pow(static_cast<double>(r.x), 0.75);
    const double worst = std::abs(r.error) + r.main_uncertainty;
    t.check(worst <= envelope);
    t.ratio(worst / envelope);
  }
  return row("error_envelope", s, fmt::format("x in {};plimit={};|error|<=x^0.75", list(xs), plimit), t);
}

BoundCheckRow count_N_envelope(unsigned s, u64 x, u64 jkmax) {
  Tally t;
  for (u64 j = 1; j <= jkmax; ++j) {
    for (u64 k = 1; k <= jkmax; ++k) {
      const u64 got = count_N(s, x, j, k);
      t.check(got == oracle::count_N(s, x, j, k));
      if (std::gcd(j, k) > 1) {
        t.check(got == 0);
      } else {
        const double dev = std::abs(static_cast<double>(got) - static_cast<double>(x) / ipow(static_cast<double>(j * k), s));
        t.check(dev <= 1.0);
        t.ratio(dev);
      }
    }
  }
  return row("count_N", s, fmt::format("x={};j,k<={}", x, jkmax), t);
}

BoundCheckRow hensel_oracle(unsigned s, u64 limit) {
  // largest moduli first so the scheduler finishes evenly
  const auto parts = parallel_map(limit, [&](std::size_t i) {
    const u64 k = limit - i;
    std::vector<std::pair<u64, int>> queries;
    for (u64 u = 1; u <= limit; ++u) {
      if (std::gcd(u, k) != 1) continue;
      queries.emplace_back(u, 1);
      queries.emplace_back(u, -1);
    }
    const std::vector<u64> ref = oracle::hensel_scan(s, k, queries);
    Tally t;
    for (std::size_t j = 0; j < queries.size(); ++j) {
      const auto [u, sign] = queries[j];
      const std::vector<u64> sols = hensel_solutions(s, u, k, sign);
      t.check(hensel_count(s, u, k, sign) == ref[j] && sols.size() == ref[j]);
    }
    return t;
  });
  return row("hensel_oracle", s, fmt::format("u,k<={};both signs", limit), merge(parts));
}

BoundCheckRow hensel_bound(unsigned s, u64 limit) {
  Tally t;
  for (u64 k = 1; k <= limit; ++k) {
    const Factorization f = factorize(k);
    bool lifts = true;
    for (const PrimePower& pp : f.factors()) lifts = lifts && (s % pp.p != 0);
    if (!lifts) continue;
    const double cap = ipow(s, static_cast<unsigned>(f.nu()));
    for (u64 u = 1; u <= limit; ++u) {
      if (std::gcd(u, k) != 1) continue;
      for (int sign : {1, -1}) {
        const u64 c = hensel_count(s, u, k, sign);
        t.check(static_cast<double>(c) <= cap);
        t.ratio(static_cast<double>(c) / cap);
      }
    }
  }
  return row("hensel_bound", s, fmt::format("u,k<={};p|k => p!|su;count<=s^nu(k)", limit), t);
}

BoundCheckRow quadruple_envelope(unsigned s, const std::vector<u64>& xs, const std::vector<u64>& boxes) {
  Tally t;
  for (u64 x : xs) {
    for (u64 J : boxes) {
      for (u64 K : boxes) {
        if (J < K || checked_pow(J, s) > x) continue;
        for (int sign : {1, -1}) {
          const QuadrupleCount c = quadruple_count({s, x, J, K, sign});
          t.check(c.count == oracle::quadruple(s, x, J, K, sign));
          t.check(static_cast<double>(c.count) <= 100.0 * c.bound);
          t.ratio(c.ratio());
        }
      }
    }
  }
  return row("quadruple_envelope", s, fmt::format("x in {};J,K in {};J>=K;C=100", list(xs), list(boxes)), t);
}

BoundCheckRow quadruple_swap(unsigned s, u64 x, const std::vector<u64>& boxes) {
  Tally t;
  for (u64 J : boxes) {
    for (u64 K : boxes) {
      for (int sign : {1, -1}) {
        const u64 xs = sign > 0 ? x - 1 : x + 1;
        if (checked_pow(J, s) > x || checked_pow(K, s) > xs) continue;
        const u64 a = quadruple_count({s, x, J, K, sign}).count;
        const u64 b = quadruple_count({s, xs, K, J, -sign}).count;
        t.check(a == b);
      }
    }
  }
  return row("quadruple_swap", s, fmt::format("x={};J,K in {}", x, list(boxes)), t);
}

BoundCheckRow exponent_order(unsigned smax) {
  Tally t;
  const ExponentTable two = exponent_table(2);
  t.check(two.carlitz == Rational(2, 3) && two.improved == Rational(7, 11) && two.aux == Rational(51, 88));
  for (unsigned s = 2; s <= smax; ++s) t.check(exponent_table(s).ordered());
  return row("exponent_order", 0, fmt::format("2<=s<={}", smax), t);
}

std::vector<BoundCheckRow> all(u64 seed) {
  std::vector<BoundCheckRow> out;
  out.push_back(mobius_agreement(100000));
  for (unsigned s : {2, 3, 4}) out.push_back(sfree_indicator(s, 100000));
  out.push_back(squarefull_split(100000));
  out.push_back(squarefull_count(1000000));
  for (unsigned s : {2, 3}) out.push_back(divisor_power(s, 10000));

  for (unsigned s : {2, 3, 4, 5}) out.push_back(character_properties(s, 200));
  for (unsigned s : {2, 3, 4, 5}) out.push_back(gauss_sums(s, 200));
  for (unsigned s : {2, 3}) out.push_back(pair_sum_period(s));

  out.push_back(remark_a({3, 5}, 2));
  out.push_back(remark_a({7, 13}, 3));
  out.push_back(sigma_expansion());
  out.push_back(inner_count(1000));
  for (u64 Q : {20, 50}) out.push_back(interval_sieve(2, 10000, Q));
  for (unsigned s : {2, 3}) out.push_back(twin_weight_micro(s, 20));

  for (unsigned s : {2, 3, 4}) out.push_back(s2_bound(s, 100));
  for (unsigned s : {2, 3}) out.push_back(s2_elimination(s, 30));
  out.push_back(chalk_smith(7, 3, 1));
  out.push_back(chalk_smith(13, 2, -1));
  out.push_back(chalk_smith(31, 5, 1));
  for (unsigned s : {2, 3}) out.push_back(s1_split(s, 30));
  out.push_back(factorization_grid());
  out.push_back(factorization_random(seed, 200));
  out.push_back(crt_gcd_transfer(seed, 1000));
  out.push_back(completion_sums(seed, 10000));

  for (unsigned s : {2, 3, 4}) out.push_back(twin_oracle(s, 100000));
  for (unsigned s : {2, 3}) out.push_back(twin_decomposition(s, 10000));
  out.push_back(constant_consistency(2, 1000000));
  out.push_back(constant_consistency(3, 100000));
  out.push_back(error_envelope(2, {10000, 100000, 1000000, 10000000}, 1000000));
  out.push_back(count_N_envelope(2, 1000, 12));
  out.push_back(count_N_envelope(3, 5000, 6));
  for (unsigned s : {2, 3, 4, 5}) out.push_back(hensel_oracle(s, 40));
  for (unsigned s : {2, 3, 4, 5}) out.push_back(hensel_bound(s, 40));
  out.push_back(quadruple_envelope(2, {1000, 10000}, {2, 5, 10, 20}));
  out.push_back(quadruple_swap(2, 10000, {2, 5, 10, 20}));
  out.push_back(quadruple_swap(3, 10000, {2, 3, 5}));
  out.push_back(exponent_order(100));
  return out;
}

}  // namespace powersieve::verify
