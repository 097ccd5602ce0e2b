#include "powersieve/twins.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "powersieve/numeric.hpp"
#include "powersieve/parallel.hpp"

namespace powersieve {

namespace {

void require_s(unsigned s, const char* who) {
  if (s < 2) throw std::invalid_argument(std::string(who) + ": s must be >= 2");
}

void require_sign(int sign, const char* who) {
  if (sign != 1 && sign != -1) throw std::invalid_argument(std::string(who) + ": sign must be +1 or -1");
}

// Moebius values mu(0..n) by a linear sieve.
std::vector<int> mobius_table(u64 n) {
  std::vector<int> mu(n + 1, 1);
  std::vector<u64> primes;
  std::vector<bool> composite(n + 1, false);
  mu[0] = 0;
  for (u64 i = 2; i <= n; ++i) {
    if (!composite[i]) {
      primes.push_back(i);
      mu[i] = -1;
    }
    for (u64 p : primes) {
      if (i * p > n) break;
      composite[i * p] = true;
      if (i % p == 0) {
        mu[i * p] = 0;
        break;
      }
      mu[i * p] = -mu[i];
    }
  }
  return mu;
}

}  // namespace

// ---------------------------------------------------------------------
// Density constant
// ---------------------------------------------------------------------

double CsConstant::abs_error() const { return value * std::expm1(log_tail); }

CsConstant cs_constant(unsigned s, u64 plimit) {
  require_s(s, "cs_constant");
  if (plimit < 2) throw std::invalid_argument("cs_constant: plimit must be >= 2");
  KahanSum<double> log_sum;
  for (u64 p : primes_up_to(plimit)) {
    log_sum += std::log1p(-2.0 / std::pow(static_cast<double>(p), s));
  }
  CsConstant out;
  out.s = s;
  out.plimit = plimit;
  out.value = std::exp(log_sum.value());
  // |log(1 - y)| <= 3y/2 for y <= 1/3, and sum_{n > P} n^-s <= P^(1-s) / (s - 1).
  out.log_tail = 3.0 * std::pow(static_cast<double>(plimit), 1.0 - s) / (s - 1.0);
  return out;
}

double cs_dirichlet_partial(unsigned s, u64 N) {
  require_s(s, "cs_dirichlet_partial");
  const std::vector<int> mu = mobius_table(N);
  std::vector<std::uint32_t> divisors(N + 1, 0);
  for (u64 i = 1; i <= N; ++i) {
    for (u64 j = i; j <= N; j += i) ++divisors[j];
  }
  KahanSum<double> acc;
  for (u64 n = 1; n <= N; ++n) {
    if (mu[n] == 0) continue;
    acc += mu[n] * static_cast<double>(divisors[n]) / std::pow(static_cast<double>(n), s);
  }
  return acc.value();
}

double cs_dirichlet_tail(unsigned s, u64 N) {
  require_s(s, "cs_dirichlet_tail");
  const double n = static_cast<double>(std::max<u64>(N, 1));
  const double sm1 = s - 1.0;
  return s * std::pow(n, -sm1) * ((std::log(n) + 1.0) / sm1 + 1.0 / (sm1 * sm1));
}

ConstantCheck cs_consistency(unsigned s, u64 plimit, u64 dirichlet_terms) {
  ConstantCheck out;
  out.euler = cs_constant(s, plimit);
  out.dirichlet_terms = dirichlet_terms;
  out.dirichlet_value = cs_dirichlet_partial(s, dirichlet_terms);
  out.dirichlet_tail = cs_dirichlet_tail(s, dirichlet_terms);
  out.difference = std::abs(out.euler.value - out.dirichlet_value);
  out.allowed = out.euler.abs_error() + out.dirichlet_tail;
  return out;
}

// ---------------------------------------------------------------------
// Twin counts
// ---------------------------------------------------------------------

std::vector<u64> twin_prefix_counts(unsigned s, const std::vector<u64>& xs, std::size_t segment_size) {
  require_s(s, "twin_prefix_counts");
  if (segment_size == 0) throw std::invalid_argument("twin_prefix_counts: segment size must be positive");
  if (xs.empty()) return {};
  if (!std::is_sorted(xs.begin(), xs.end()) || xs.front() == 0) {
    throw std::invalid_argument("twin_prefix_counts: xs must be positive and ascending");
  }
  const u64 X = xs.back();
  const SfreeSieve sieve(s, checked_add(X, 1));
  const u64 B = segment_size;
  const std::size_t blocks = static_cast<std::size_t>((X + B - 1) / B);

  struct Block {
    u64 total = 0;
    std::vector<u64> partial;  // counts within the block up to each threshold in it
  };
  const auto parts = parallel_map(blocks, [&](std::size_t b) {
    const u64 lo = 1 + b * B;
    const u64 hi = std::min(X, lo + B - 1);
    std::vector<std::uint8_t> flags;
    sieve.fill(lo, hi + 1, flags);
    auto it = std::lower_bound(xs.begin(), xs.end(), lo);
    Block out;
    for (u64 n = lo; n <= hi; ++n) {
      out.total += flags[n - lo] & flags[n - lo + 1];
      while (it != xs.end() && *it == n) {
        out.partial.push_back(out.total);
        ++it;
      }
    }
    return out;
  });

  std::vector<u64> counts;
  counts.reserve(xs.size());
  u64 before = 0;
  for (const Block& block : parts) {
    for (u64 c : block.partial) counts.push_back(before + c);
    before += block.total;
  }
  return counts;
}

u64 count_twin_sfree(unsigned s, u64 x, std::size_t segment_size) {
  if (x == 0) throw std::invalid_argument("count_twin_sfree: x must be positive");
  return twin_prefix_counts(s, {x}, segment_size).front();
}

u64 count_N(unsigned s, u64 x, u64 j, u64 k) {
  require_s(s, "count_N");
  if (j == 0 || k == 0) throw std::invalid_argument("count_N: j and k must be positive");
  if (std::gcd(j, k) > 1) return 0;
  // n >= j^s and n + 1 >= k^s; saturate instead of overflowing.
  auto power_or_inf = [&](u64 b) {
    try {
      return checked_pow(b, s);
    } catch (const OverflowError&) {
      return std::numeric_limits<u64>::max();
    }
  };
  const u64 js = power_or_inf(j), ks = power_or_inf(k);
  if (js > x || ks - 1 > x) return 0;
  // n = js * t with js t = -1 (mod ks)
  const u64 t = (ks == 1) ? 0 : mulmod(ks - 1, invmod(js % ks, ks), ks);
  const u128 step = static_cast<u128>(js) * ks;
  u128 first = static_cast<u128>(js) * t;
  if (first == 0) first = step;
  if (first > x) return 0;
  return static_cast<u64>((x - first) / step + 1);
}

i64 twin_count_by_decomposition(unsigned s, u64 x) {
  require_s(s, "twin_count_by_decomposition");
  const u64 jmax = iroot(x, s);
  const u64 kmax = iroot(checked_add(x, 1), s);
  const std::vector<int> mu = mobius_table(std::max(jmax, kmax));
  i64 total = 0;
  for (u64 j = 1; j <= jmax; ++j) {
    if (mu[j] == 0) continue;
    for (u64 k = 1; k <= kmax; ++k) {
      if (mu[k] == 0) continue;
      total += mu[j] * mu[k] * static_cast<i64>(count_N(s, x, j, k));
    }
  }
  return total;
}

// ---------------------------------------------------------------------
// Hensel counting
// ---------------------------------------------------------------------

namespace {

struct PrimePowerRoots {
  u64 modulus;
  std::vector<u64> roots;
};

// Roots of u j^s + sign = 0 modulo p^t.
PrimePowerRoots roots_mod_prime_power(unsigned s, u64 u, u64 p, unsigned t, int sign) {
  const u64 minus_sign_p = reduce_signed(-sign, p);
  std::vector<u64> roots;
  const u64 up = u % p;
  for (u64 xi = 0; xi < p; ++xi) {
    if (mulmod(up, powmod(xi, s, p), p) == minus_sign_p) roots.push_back(xi);
  }
  u64 mod = p;
  // Derivative s u xi^(s-1) is a unit mod p exactly when p does not divide s
  // (u and xi are units here), so each root lifts uniquely.
  const bool nonsingular = (s % p) != 0;
  for (unsigned level = 1; level < t; ++level) {
    const u64 next_mod = checked_mul(mod, p);
    const u64 target = reduce_signed(-sign, next_mod);
    const u64 un = u % next_mod;
    std::vector<u64> lifted;
    if (nonsingular) {
      for (u64 xi : roots) {
        const u64 f = (mulmod(un, powmod(xi, s, next_mod), next_mod) + next_mod - target) % next_mod;
        const u64 df = mulmod(mulmod(s % next_mod, un, next_mod), powmod(xi, s - 1, next_mod), next_mod);
        const u64 step = mulmod(f, invmod(df, next_mod), next_mod);
        lifted.push_back((xi + next_mod - step) % next_mod);
      }
    } else {
      // Singular case: search the p candidates above each root.
      for (u64 xi : roots) {
        for (u64 i = 0; i < p; ++i) {
          const u64 cand = xi + i * mod;
          if (mulmod(un, powmod(cand, s, next_mod), next_mod) == target) lifted.push_back(cand);
        }
      }
    }
    roots = std::move(lifted);
    mod = next_mod;
  }
  std::sort(roots.begin(), roots.end());
  return {mod, std::move(roots)};
}

std::vector<PrimePowerRoots> local_roots(unsigned s, u64 u, u64 k, int sign) {
  require_s(s, "hensel");
  require_sign(sign, "hensel");
  if (u == 0 || k == 0) throw std::invalid_argument("hensel: u and k must be positive");
  if (std::gcd(u, k) != 1) throw std::invalid_argument("hensel: gcd(u, k) must be 1");
  checked_pow(k, s);
  std::vector<PrimePowerRoots> out;
  const Factorization fk = factorize(k);
  for (const auto& [p, e] : fk.factors()) {
    out.push_back(roots_mod_prime_power(s, u, p, s * e, sign));
  }
  return out;
}

}  // namespace

u64 hensel_count(unsigned s, u64 u, u64 k, int sign) {
  u64 count = 1;
  for (const auto& local : local_roots(s, u, k, sign)) count *= local.roots.size();
  return count;
}

std::vector<u64> hensel_solutions(unsigned s, u64 u, u64 k, int sign) {
  std::vector<u64> residues = {0};
  u64 mod = 1;
  for (const auto& local : local_roots(s, u, k, sign)) {
    std::vector<u64> next;
    next.reserve(residues.size() * local.roots.size());
    const u64 new_mod = checked_mul(mod, local.modulus);
    const u64 inv = invmod(mod % local.modulus, local.modulus);
    for (u64 r : residues) {
      for (u64 root : local.roots) {
        const u64 diff = (root + local.modulus - r % local.modulus) % local.modulus;
        next.push_back(r + mod * mulmod(diff, inv, local.modulus));
      }
    }
    residues = std::move(next);
    mod = new_mod;
  }
  std::sort(residues.begin(), residues.end());
  return residues;
}

// ---------------------------------------------------------------------
// Quadruple counts
// ---------------------------------------------------------------------

double quadruple_bound(const QuadrupleQuery& q) {
  const double x = static_cast<double>(q.x), J = static_cast<double>(q.J), K = static_cast<double>(q.K);
  const double s = q.s;
  return x * (std::pow(J, -s) * K + std::pow(J * K, 1.0 - s)) * std::pow(std::log(x), s - 1.0);
}

QuadrupleCount quadruple_count(const QuadrupleQuery& q) {
  require_s(q.s, "quadruple_count");
  require_sign(q.sign, "quadruple_count");
  if (q.J == 0 || q.K == 0) throw std::invalid_argument("quadruple_count: J and K must be positive");
  const u64 Js = checked_pow(q.J, q.s);
  if (Js > q.x) throw std::invalid_argument("quadruple_count: need J^s <= x");
  const u64 umax = q.x / checked_pow(q.J + 1, q.s) + 1;
  if (static_cast<double>(q.K) * static_cast<double>(umax) > 1e9) {
    throw std::invalid_argument("quadruple_count: loop budget exceeded");
  }

  // One task per k; the j-solutions for each (k, u) come either from a
  // direct scan of (J, 2J] or from the Hensel residues mod k^s.
  const auto per_k = parallel_map(q.K, [&](std::size_t i) -> u64 {
    const u64 k = q.K + 1 + i;
    u64 ks;
    try {
      ks = checked_pow(k, q.s);
    } catch (const OverflowError&) {
      return 0;
    }
    if (ks > q.x) return 0;
    u64 found = 0;
    for (u64 u = 1;; ++u) {
      // j^s u + sign <= x with j >= J + 1
      const u128 smallest = static_cast<u128>(checked_pow(q.J + 1, q.s)) * u;
      if (q.sign > 0 ? smallest + 1 > q.x : smallest - 1 > q.x) break;
      if (std::gcd(u, k) != 1) continue;
      const u64 cap = q.sign > 0 ? q.x - 1 : checked_add(q.x, 1);
      const u64 jmax = std::min<u64>(2 * q.J, iroot(cap / u, q.s));
      auto accept = [&](u64 j) {
        const u64 n = checked_mul(checked_pow(j, q.s), u);
        const u64 lhs = q.sign > 0 ? n + 1 : n - 1;
        return lhs <= q.x && lhs % ks == 0;
      };
      if (q.J <= ks) {
        for (u64 j = q.J + 1; j <= jmax; ++j) found += accept(j);
      } else {
        for (u64 r : hensel_solutions(q.s, u, k, q.sign)) {
          // first j > J with j = r (mod ks)
          u64 j = q.J + 1 + (r + ks - (q.J + 1) % ks) % ks;
          for (; j <= jmax; j += ks) found += accept(j);
        }
      }
    }
    return found;
  });

  QuadrupleCount out;
  for (u64 c : per_k) out.count += c;
  out.bound = quadruple_bound(q);
  return out;
}

u64 count_N_u(unsigned s, u64 x, u64 u, u64 J, u64 K, int sign) {
  require_s(s, "count_N_u");
  require_sign(sign, "count_N_u");
  u64 out = 0;
  for (u64 j = J + 1; j <= 2 * J; ++j) {
    const u64 n = checked_mul(checked_pow(j, s), u);
    const u64 lhs = sign > 0 ? checked_add(n, 1) : n - 1;
    if (lhs > x) break;
    for (u64 k = K + 1; k <= 2 * K; ++k) {
      const u64 ks = checked_pow(k, s);
      if (ks <= lhs && lhs % ks == 0) ++out;
    }
  }
  return out;
}

// ---------------------------------------------------------------------
// Error scans and exponents
// ---------------------------------------------------------------------

ErrorScan error_scan(unsigned s, const std::vector<u64>& xs, u64 plimit) {
  if (xs.empty()) throw std::invalid_argument("error_scan: xs must not be empty");
  const CsConstant cs = cs_constant(s, plimit);
  const std::vector<u64> counts = twin_prefix_counts(s, xs);
  ErrorScan out;
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    TwinScanRow row;
    row.s = s;
    row.x = xs[i];
    row.count = counts[i];
    row.main = cs.value * static_cast<double>(xs[i]);
    row.error = static_cast<double>(counts[i]) - row.main;
    row.main_uncertainty = cs.abs_error() * static_cast<double>(xs[i]);
    row.in_fit = std::abs(row.error) >= 1.0;
    if (row.in_fit) {
      lx.push_back(std::log(static_cast<double>(row.x)));
      ly.push_back(std::log(std::abs(row.error)));
    }
    out.rows.push_back(row);
  }
  if (lx.size() < 2) {
    out.fitted_slope = std::numeric_limits<double>::quiet_NaN();
  } else {
    const double n = static_cast<double>(lx.size());
    const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
    const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      sxy += (lx[i] - mx) * (ly[i] - my);
      sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    out.fitted_slope = sxx > 0 ? sxy / sxx : std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

Rational::Rational(i64 n, i64 d) {
  if (d == 0) throw std::invalid_argument("Rational: zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const i64 g = std::gcd(n, d);
  num = n / g;
  den = d / g;
}

std::string Rational::str() const { return std::to_string(num) + "/" + std::to_string(den); }

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const __int128 lhs = static_cast<__int128>(a.num) * b.den;
  const __int128 rhs = static_cast<__int128>(b.num) * a.den;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

ExponentTable exponent_table(unsigned s) {
  require_s(s, "exponent_table");
  const i64 v = s;
  ExponentTable out;
  out.s = s;
  out.carlitz = Rational(2, v + 1);
  out.improved = Rational(14, 7 * v + 8);
  out.aux = Rational(39 * v + 24, 21 * v * v + 38 * v + 16);
  return out;
}

double q_choice(unsigned s, double x, double J, double K) {
  if (!(x > 1.0 && J > 1.0 && K > 1.0)) throw std::invalid_argument("q_choice: x, J, K must exceed 1");
  const double sd = s;
  const double lg2 = std::log(x) * std::log(x);
  const double raw = std::pow(x, -1.0 / 6.0) * std::pow(J, sd / 2.0) * std::pow(K, -(sd - 1.0) / 3.0) + lg2;
  return std::clamp(raw, lg2, x);
}

}  // namespace powersieve
