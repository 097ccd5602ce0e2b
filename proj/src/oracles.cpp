#include "powersieve/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace powersieve::oracle {

namespace {

using lcplx = std::complex<long double>;

u64 pow_plain(u64 base, unsigned e, u64 m) {
  u64 r = 1 % m;
  for (unsigned i = 0; i < e; ++i) r = static_cast<u64>((static_cast<u128>(r) * base) % m);
  return r;
}

u64 mod(i64 a, u64 m) {
  const i64 r = a % static_cast<i64>(m);
  return static_cast<u64>(r < 0 ? r + static_cast<i64>(m) : r);
}

cplx narrow(lcplx z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

}  // namespace

bool is_sfree(u64 n, unsigned s) {
  for (u64 d = 2;; ++d) {
    u64 ds = 1;
    bool over = false;
    for (unsigned i = 0; i < s; ++i) {
      if (ds > n / d) {
        over = true;
        break;
      }
      ds *= d;
    }
    if (over) return true;
    if (n % ds == 0) return false;
  }
}

std::vector<u64> twin_prefix(unsigned s, u64 X) {
  std::vector<u64> prefix(X + 1, 0);
  bool prev = is_sfree(1, s);
  for (u64 n = 1; n <= X; ++n) {
    const bool next = is_sfree(n + 1, s);
    prefix[n] = prefix[n - 1] + ((prev && next) ? 1 : 0);
    prev = next;
  }
  return prefix;
}

std::vector<int> mobius_sieve(u64 N) {
  std::vector<int> mu(N + 1, 0);
  if (N >= 1) mu[1] = 1;
  for (u64 i = 1; i <= N; ++i) {
    if (mu[i] == 0) continue;
    for (u64 j = 2 * i; j <= N; j += i) mu[j] -= mu[i];
  }
  return mu;
}

u64 ordered_factorizations(u64 n, unsigned k) {
  if (k == 1) return 1;
  u64 total = 0;
  for (u64 d = 1; d <= n; ++d) {
    if (n % d == 0) total += ordered_factorizations(n / d, k - 1);
  }
  return total;
}

std::vector<u64> squarefull_prefix(u64 Z) {
  std::vector<u64> spf(Z + 1, 0);
  for (u64 i = 2; i <= Z; ++i) {
    if (spf[i]) continue;
    for (u64 j = i; j <= Z; j += i)
      if (!spf[j]) spf[j] = i;
  }
  std::vector<u64> prefix(Z + 1, 0);
  for (u64 t = 1; t <= Z; ++t) {
    bool full = true;
    for (u64 n = t; n > 1 && full;) {
      const u64 p = spf[n];
      unsigned e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      full = e >= 2;
    }
    prefix[t] = prefix[t - 1] + (full ? 1 : 0);
  }
  return prefix;
}

u64 multiplicative_order(u64 a, u64 p) {
  a %= p;
  if (a == 0) throw std::invalid_argument("multiplicative_order: a = 0 mod p");
  u64 x = a;
  u64 k = 1;
  while (x != 1) {
    x = x * a % p;
    ++k;
  }
  return k;
}

u64 primitive_root(u64 p) {
  if (p == 2) return 1;
  for (u64 g = 2; g < p; ++g) {
    if (multiplicative_order(g, p) == p - 1) return g;
  }
  throw std::invalid_argument("primitive_root: no generator");
}

Char::Char(u64 p, unsigned s, u64 power) : p_(p), d_(static_cast<unsigned>(std::gcd<u64>(s, p - 1))), power_(power) {
  if (d_ < 2) throw std::invalid_argument("oracle::Char: inadmissible prime");
  const u64 g = primitive_root(p);
  log_.assign(p, -1);
  u64 x = 1;
  for (u64 k = 0; k + 1 < p; ++k) {
    log_[x] = static_cast<i64>(k);
    x = x * g % p;
  }
}

cplx Char::operator()(i64 n) const {
  const u64 r = mod(n, p_);
  if (r == 0) return {};
  const u64 k = (power_ % d_) * static_cast<u64>(log_[r]) % d_;
  return e(static_cast<i64>(k), d_);
}

cplx e(i64 numerator, u64 denominator) {
  const long double angle = 2.0L * std::numbers::pi_v<long double> *
                            static_cast<long double>(mod(numerator, denominator)) /
                            static_cast<long double>(denominator);
  return {static_cast<double>(std::cos(angle)), static_cast<double>(std::sin(angle))};
}

cplx gauss_sum(u64 p, unsigned s) {
  const Char chi(p, s);
  lcplx sum = 0;
  for (u64 b = 1; b <= p; ++b) {
    const lcplx term = lcplx(chi(static_cast<i64>(b))) * lcplx(e(static_cast<i64>(b), p));
    sum += term;
  }
  return narrow(sum);
}

cplx pair_sum(u64 p, u64 q, unsigned s, u64 x) {
  const Char chi_p(p, s);
  const Char chi_q(q, s);
  lcplx sum = 0;
  for (u64 n = 1; n <= x; ++n) {
    sum += lcplx(chi_p(static_cast<i64>(n)) * std::conj(chi_q(static_cast<i64>(n))));
  }
  return narrow(sum);
}

cplx s1(u64 p, unsigned s, i64 c, i64 d, int sign, u64 power) {
  const Char chi(p, s, power);
  lcplx sum = 0;
  for (u64 a = 1; a <= p; ++a) {
    const u64 as = pow_plain(a, s, p);
    for (u64 b = 1; b <= p; ++b) {
      const i64 arg = static_cast<i64>(as * b % p) - sign;
      const cplx v = chi(arg);
      if (v == cplx{}) continue;
      sum += lcplx(v * e(c * static_cast<i64>(a) + d * static_cast<i64>(b), p));
    }
  }
  return narrow(sum);
}

cplx s2(u64 m, unsigned s, i64 c, i64 d, int sign) {
  lcplx sum = 0;
  for (u64 a = 1; a <= m; ++a) {
    const u64 as = pow_plain(a, s, m);
    for (u64 b = 1; b <= m; ++b) {
      if (mod(static_cast<i64>(as * b % m) - sign, m) != 0) continue;
      sum += lcplx(e(c * static_cast<i64>(a) + d * static_cast<i64>(b), m));
    }
  }
  return narrow(sum);
}

cplx s_full(const ExpSumParams& params) {
  const u64 M = params.u * params.p * params.q;
  const Char chi_p(params.p, params.s, params.power_p);
  const Char chi_q(params.q, params.s, params.power_q);
  lcplx sum = 0;
  for (u64 a = 1; a <= M; ++a) {
    const u64 as = pow_plain(a, params.s, M);
    for (u64 b = 1; b <= M; ++b) {
      const u64 arg = mod(static_cast<i64>(as * b % M) - params.sign, M);
      if (arg % params.u != 0) continue;
      const cplx chi = chi_p(static_cast<i64>(arg)) * std::conj(chi_q(static_cast<i64>(arg)));
      if (chi == cplx{}) continue;
      const i64 phase = static_cast<i64>(mod(params.gamma, M) * a % M + mod(params.delta, M) * b % M);
      sum += lcplx(chi * e(phase, M));
    }
  }
  return narrow(sum);
}

cplx completion_sum(i64 lo, i64 hi, i64 freq, u64 modulus) {
  lcplx sum = 0;
  const i64 f = static_cast<i64>(mod(freq, modulus));
  for (i64 n = lo + 1; n <= hi; ++n) {
    sum += lcplx(e(-static_cast<i64>(mod(f * n, modulus)), modulus));
  }
  return narrow(sum);
}

u64 count_N(unsigned s, u64 x, u64 j, u64 k) {
  const u64 js = checked_pow(j, s);
  const u64 ks = checked_pow(k, s);
  u64 count = 0;
  for (u64 n = 1; n <= x; ++n) {
    if (n % js == 0 && (n + 1) % ks == 0) ++count;
  }
  return count;
}

u64 quadruple(unsigned s, u64 x, u64 J, u64 K, int sign) {
  u64 count = 0;
  for (u64 j = J + 1; j <= 2 * J; ++j) {
    const u64 js = checked_pow(j, s);
    for (u64 u = 1;; ++u) {
      const i64 n = static_cast<i64>(js * u) + sign;
      if (n > static_cast<i64>(x)) break;
      for (u64 k = K + 1; k <= 2 * K; ++k) {
        const u64 ks = checked_pow(k, s);
        if (static_cast<u64>(n) % ks == 0) ++count;
      }
    }
  }
  return count;
}

std::vector<u64> hensel_scan(unsigned s, u64 k, const std::vector<std::pair<u64, int>>& queries) {
  const u64 m = checked_pow(k, s);
  std::vector<u64> counts(queries.size(), 0);
  if (m == 1) {
    std::fill(counts.begin(), counts.end(), 1);
    return counts;
  }

  // Solutions of j^s u = -sign are exactly the j with j^s = -sign u^-1.
  std::vector<u64> target(queries.size());
  for (std::size_t i = 0; i < queries.size(); ++i) {
    i64 r0 = static_cast<i64>(m), r1 = static_cast<i64>(queries[i].first % m);
    i64 t0 = 0, t1 = 1;
    while (r1 != 0) {
      const i64 qt = r0 / r1;
      std::tie(r0, r1) = std::make_pair(r1, r0 - qt * r1);
      std::tie(t0, t1) = std::make_pair(t1, t0 - qt * t1);
    }
    if (r0 != 1) throw std::invalid_argument("oracle::hensel_scan: gcd(u, k) > 1");
    const u64 inv = mod(t0, m);
    target[i] = queries[i].second > 0 ? (m - inv) % m : inv;
  }
  std::vector<u64> sorted = target;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<bool> is_target(m, false);
  for (u64 t : sorted) is_target[t] = true;
  std::vector<u64> hits(sorted.size(), 0);

  // j^s mod m by forward differences: s + 1 running values, additions only.
  std::vector<u64> diff(s + 1);
  for (unsigned i = 0; i <= s; ++i) diff[i] = pow_plain(i, s, m);
  for (unsigned level = 1; level <= s; ++level) {
    for (unsigned i = s; i >= level; --i) diff[i] = (diff[i] + m - diff[i - 1]) % m;
  }
  for (u64 j = 0; j < m; ++j) {
    const u64 v = diff[0];
    if (is_target[v]) ++hits[std::lower_bound(sorted.begin(), sorted.end(), v) - sorted.begin()];
    for (unsigned i = 0; i < s; ++i) {
      u64 next = diff[i] + diff[i + 1];
      if (next >= m) next -= m;
      diff[i] = next;
    }
  }
  for (std::size_t i = 0; i < queries.size(); ++i) {
    counts[i] = hits[std::lower_bound(sorted.begin(), sorted.end(), target[i]) - sorted.begin()];
  }
  return counts;
}

}  // namespace powersieve::oracle
