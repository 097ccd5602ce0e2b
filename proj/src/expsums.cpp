#include "powersieve/expsums.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "powersieve/parallel.hpp"

namespace powersieve {

namespace {

void require_sign(int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
}

// x = r_i (mod m_i) for pairwise coprime m_i; result in [0, prod m_i).
u64 crt_combine(std::initializer_list<std::pair<u64, u64>> parts) {
  u64 x = 0, m = 1;
  for (const auto& [r, mod] : parts) {
    if (mod == 1) continue;
    // x + m t = r (mod mod)  =>  t = (r - x) m^-1 (mod mod)
    const u64 diff = (r % mod + mod - x % mod) % mod;
    const u64 t = mulmod(diff, invmod(m % mod, mod), mod);
    x = static_cast<u64>(static_cast<u128>(x) + static_cast<u128>(m) * t);
    m = checked_mul(m, mod);
  }
  return x;
}

}  // namespace

void ExpSumParams::validate() const {
  require_sign(sign);
  if (u == 0) throw std::invalid_argument("ExpSumParams: u must be positive");
  if (p == q) throw std::invalid_argument("ExpSumParams: p must differ from q");
  for (u64 prime : {p, q}) {
    if (!is_admissible(prime, s)) {
      throw InadmissiblePrime("ExpSumParams: " + std::to_string(prime) + " not admissible for s = " +
                              std::to_string(s));
    }
  }
  if (std::gcd(p, checked_mul(q, u)) != 1 || std::gcd(q, checked_mul(p, u)) != 1) {
    throw std::invalid_argument("ExpSumParams: p, q must be coprime to each other and to u");
  }
}

cplx s1(const Character& chi, i64 c, i64 d, int sign) {
  require_sign(sign);
  const u64 p = chi.modulus();
  const UnitRoots e(p);
  const u64 cr = reduce_signed(c, p), dr = reduce_signed(d, p);
  const u64 minus_sign = reduce_signed(-sign, p);
  KahanSum<cplx> acc;
  for (u64 a = 1; a <= p; ++a) {
    const u64 as = powmod(a, chi.s(), p);
    u64 arg = (as + minus_sign) % p;          // a^s * 1 - sign
    u64 phase = (mulmod(cr, a, p) + dr) % p;  // c a + d * 1
    for (u64 b = 1; b <= p; ++b) {
      if (const auto k = chi.exponent(arg)) acc += chi.root(*k) * e[phase];
      arg = (arg + as) % p;
      phase = (phase + dr) % p;
    }
  }
  return acc.value();
}

cplx s1(u64 p, unsigned s, i64 c, i64 d, int sign) { return s1(order_s_character(p, s), c, d, sign); }

cplx congruence_sum(u64 m, unsigned s, i64 c, i64 d, int sign) {
  require_sign(sign);
  if (m == 0) throw std::invalid_argument("congruence_sum: zero modulus");
  const UnitRoots e(m);
  const u64 cr = reduce_signed(c, m), dr = reduce_signed(d, m);
  const u64 target = reduce_signed(sign, m);
  KahanSum<cplx> acc;
  for (u64 a = 1; a <= m; ++a) {
    const u64 as = powmod(a, s, m);
    for (u64 b = 1; b <= m; ++b) {
      if (mulmod(as, b, m) != target) continue;
      acc += e[(mulmod(cr, a, m) + mulmod(dr, b, m)) % m];
    }
  }
  return acc.value();
}

PrimeS2::PrimeS2(u64 r, unsigned s) : r_(r), inv_pow_(r), roots_(r) {
  if (!is_prime(r)) throw std::invalid_argument("PrimeS2: r must be prime");
  for (u64 a = 1; a < r; ++a) inv_pow_[a] = invmod(powmod(a, s, r), r);
}

cplx PrimeS2::operator()(i64 c, i64 d, int sign) const {
  require_sign(sign);
  const u64 cr = reduce_signed(c, r_);
  const u64 ds = reduce_signed(sign > 0 ? d : -d, r_);
  // a = r contributes nothing: a^s b - sign = -sign is a unit.
  KahanSum<cplx> acc;
  for (u64 a = 1; a < r_; ++a) {
    acc += roots_[(mulmod(cr, a, r_) + mulmod(ds, inv_pow_[a], r_)) % r_];
  }
  return acc.value();
}

cplx s2(u64 r, unsigned f, unsigned s, i64 c, i64 d, int sign) {
  if (f == 0) throw std::invalid_argument("s2: f must be >= 1");
  if (!is_prime(r)) throw std::invalid_argument("s2: r must be prime");
  if (f == 1) return PrimeS2(r, s)(c, d, sign);
  return congruence_sum(checked_pow(r, f), s, c, d, sign);
}

double s1_bound(u64 p, unsigned s) {
  return static_cast<double>(s * (s + 1) + 2) * static_cast<double>(p);
}

double s2_bound(u64 p, unsigned s, i64 c, i64 d) {
  const u64 g = std::gcd(p, std::gcd(reduce_signed(c, p), reduce_signed(d, p)));
  const double ss = static_cast<double>(s) * (s + 1);
  return ss * std::sqrt(static_cast<double>(p)) * std::sqrt(static_cast<double>(g)) +
         static_cast<double>(s + 1) * (s + 1);
}

CrtCoefficients crt_cd(u64 u, u64 p, u64 q, i64 gamma, i64 delta) {
  if (u == 0 || p == 0 || q == 0) throw std::invalid_argument("crt_cd: moduli must be positive");
  if (std::gcd(u, p) != 1 || std::gcd(u, q) != 1 || std::gcd(p, q) != 1) {
    throw std::invalid_argument("crt_cd: u, p, q must be pairwise coprime");
  }
  auto solve = [&](i64 value) {
    auto part = [&](u64 mod, u64 multiplier) -> std::pair<u64, u64> {
      if (mod == 1) return {0, 1};
      return {mulmod(reduce_signed(value, mod), invmod(multiplier % mod, mod), mod), mod};
    };
    return crt_combine({part(p, checked_mul(q, u)), part(q, checked_mul(p, u)), part(u, checked_mul(p, q))});
  };
  return {solve(gamma), solve(delta)};
}

cplx s_full(const ExpSumParams& params) {
  params.validate();
  const u64 M = params.modulus();
  if (M > kFullSumModulusCap) {
    throw std::invalid_argument("s_full: upq = " + std::to_string(M) + " exceeds the cap " +
                                std::to_string(kFullSumModulusCap));
  }
  const u64 u = params.u;
  const Character chi_p(params.p, params.s, params.power_p);
  const Character chi_q(params.q, params.s, params.power_q);
  std::vector<cplx> twisted(M);
  for (u64 r = 0; r < M; ++r) twisted[r] = chi_p(r) * std::conj(chi_q(r));
  const UnitRoots e(M);
  const u64 g = reduce_signed(params.gamma, M), h = reduce_signed(params.delta, M);
  const u64 minus_sign = reduce_signed(-params.sign, M);

  // Rows a are independent; b runs over the single class mod u allowed
  // by u | a^s b - sign (a must then be a unit mod u).
  const auto rows = parallel_map(M, [&](std::size_t i) {
    const u64 a = i + 1;
    KahanSum<cplx> acc;
    if (std::gcd(a, u) != 1) return cplx{};
    const u64 as = powmod(a, params.s, M);
    u64 b0 = (u == 1) ? 0 : mulmod(reduce_signed(params.sign, u), invmod(as % u, u), u);
    if (b0 == 0) b0 = u;
    for (u64 b = b0; b <= M; b += u) {
      const u64 arg = (mulmod(as, b, M) + minus_sign) % M;
      acc += twisted[arg] * e[(mulmod(g, a, M) + mulmod(h, b, M)) % M];
    }
    return acc.value();
  });
  KahanSum<cplx> total;
  for (const cplx& row : rows) total += row;
  return total.value();
}

cplx factorized_s_full(const ExpSumParams& params, const CrtCoefficients& cd) {
  params.validate();
  const i64 c = static_cast<i64>(cd.c), d = static_cast<i64>(cd.d);
  const Character chi_p(params.p, params.s, params.power_p);
  const Character chi_q(params.q, params.s, params.power_q);
  cplx out = s1(chi_p, c, d, params.sign) * std::conj(s1(chi_q, -c, -d, params.sign));
  const Factorization fu = factorize(params.u);
  for (const auto& [r, f] : fu.factors()) {
    const u64 rf = checked_pow(r, f);
    const u64 twist = invmod((params.u / rf) % rf, rf);
    const i64 cr = static_cast<i64>(mulmod(cd.c % rf, twist, rf));
    const i64 dr = static_cast<i64>(mulmod(cd.d % rf, twist, rf));
    out *= s2(r, f, params.s, cr, dr, params.sign);
  }
  return out;
}

FactorizationCheck verify_factorization(const ExpSumParams& params) {
  FactorizationCheck out;
  out.full = s_full(params);
  out.cd = crt_cd(params.u, params.p, params.q, params.gamma, params.delta);
  out.product = factorized_s_full(params, out.cd);
  out.residual = std::abs(out.full - out.product) / (1.0 + std::abs(out.full));
  return out;
}

cplx completion_sum(i64 lo, i64 hi, i64 freq, u64 modulus) {
  if (modulus == 0) throw std::invalid_argument("completion_sum: zero modulus");
  if (lo > hi) throw std::invalid_argument("completion_sum: need lo <= hi");
  const u64 f = (modulus - reduce_signed(freq, modulus)) % modulus;
  const u64 count = static_cast<u64>(hi - lo);
  if (f == 0) return {static_cast<double>(count), 0.0};
  auto angle = [&](u64 k) {
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(modulus));
  };
  // sum_{n=lo+1}^{hi} z^n = z^(lo+1) (1 - z^count) / (1 - z), z = e(f / modulus)
  const u64 first = mulmod(reduce_signed(lo + 1, modulus), f, modulus);
  const u64 span = mulmod(count % modulus, f, modulus);
  return angle(first) * (1.0 - angle(span)) / (1.0 - angle(f));
}

double completion_bound(i64 lo, i64 hi, i64 freq, u64 modulus) {
  if (modulus == 0) throw std::invalid_argument("completion_bound: zero modulus");
  const double count = static_cast<double>(hi - lo);
  const u64 f = reduce_signed(freq, modulus);
  if (f == 0) return count + 1.0;
  const double frac = static_cast<double>(f) / static_cast<double>(modulus);
  const double dist = std::min(frac, 1.0 - frac);
  return std::min(count, 1.0 / dist) + 1.0;
}

namespace {

template <typename Accept, typename Bound>
BoundReport scan_s2(u64 p, unsigned s, int sign, Accept accept, Bound bound) {
  require_sign(sign);
  const PrimeS2 sum(p, s);
  struct Row {
    u64 cases = 0, violations = 0;
    double max_ratio = 0.0;
  };
  const auto rows = parallel_map(p, [&](std::size_t ci) {
    Row row;
    const i64 c = static_cast<i64>(ci);
    for (i64 d = 0; d < static_cast<i64>(p); ++d) {
      if (!accept(c, d)) continue;
      const double value = std::abs(sum(c, d, sign));
      const double b = bound(c, d);
      ++row.cases;
      // 1e-9 absorbs rounding in the floating sum
      if (value > b + 1e-9) ++row.violations;
      row.max_ratio = std::max(row.max_ratio, value / b);
    }
    return row;
  });
  BoundReport out{p, s, sign, 0, 0, 0.0};
  for (const Row& row : rows) {
    out.cases += row.cases;
    out.violations += row.violations;
    out.max_ratio = std::max(out.max_ratio, row.max_ratio);
  }
  return out;
}

}  // namespace

BoundReport chalk_smith_check(u64 p, unsigned s, int sign) {
  if (p > 500) throw std::invalid_argument("chalk_smith_check: p must be <= 500");
  const double ss = static_cast<double>(s) * (s + 1);
  const double b = ss * std::sqrt(static_cast<double>(p)) + static_cast<double>(s + 1) * (s + 1);
  return scan_s2(
      p, s, sign, [](i64 c, i64 d) { return c != 0 && d != 0; }, [b](i64, i64) { return b; });
}

BoundReport s2_bound_check(u64 p, unsigned s, int sign) {
  return scan_s2(
      p, s, sign, [](i64, i64) { return true; }, [p, s](i64 c, i64 d) { return s2_bound(p, s, c, d); });
}

}  // namespace powersieve
