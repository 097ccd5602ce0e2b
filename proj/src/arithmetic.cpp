#include "powersieve/arithmetic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

namespace powersieve {

namespace {

constexpr u64 kMax = std::numeric_limits<u64>::max();

bool miller_rabin_witness(u64 n, u64 a, u64 d, unsigned r) {
  u64 x = powmod(a % n, d, n);
  if (x == 1 || x == n - 1) return false;
  for (unsigned i = 1; i < r; ++i) {
    x = mulmod(x, x, n);
    if (x == n - 1) return false;
  }
  return true;
}

}  // namespace

u64 checked_mul(u64 a, u64 b) {
  u64 out;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw OverflowError("64-bit multiplication overflow");
  }
  return out;
}

u64 checked_add(u64 a, u64 b) {
  u64 out;
  if (__builtin_add_overflow(a, b, &out)) {
    throw OverflowError("64-bit addition overflow");
  }
  return out;
}

u64 checked_pow(u64 base, unsigned exponent) {
  u64 out = 1;
  for (unsigned i = 0; i < exponent; ++i) out = checked_mul(out, base);
  return out;
}

u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 powmod(u64 base, u64 exponent, u64 m) {
  if (m == 1) return 0;
  u64 result = 1;
  base %= m;
  while (exponent > 0) {
    if (exponent & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exponent >>= 1;
  }
  return result;
}

u64 invmod(u64 a, u64 m) {
  if (m == 0) throw std::domain_error("invmod: zero modulus");
  if (m == 1) return 0;
  // Extended Euclid on signed 128-bit values.
  __int128 old_r = static_cast<__int128>(a % m), r = m;
  __int128 old_s = 1, s = 0;
  while (r != 0) {
    __int128 q = old_r / r;
    __int128 tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1) throw std::domain_error("invmod: not invertible");
  __int128 res = old_s % static_cast<__int128>(m);
  if (res < 0) res += m;
  return static_cast<u64>(res);
}

u64 reduce_signed(i64 a, u64 m) {
  if (m == 0) throw std::domain_error("reduce_signed: zero modulus");
  __int128 r = static_cast<__int128>(a) % static_cast<__int128>(m);
  if (r < 0) r += m;
  return static_cast<u64>(r);
}

u64 iroot(u64 n, unsigned k) {
  if (k == 0) throw std::invalid_argument("iroot: k must be positive");
  if (k == 1 || n < 2) return n;
  auto fits = [&](u64 r) {
    u128 acc = 1;
    for (unsigned i = 0; i < k; ++i) {
      acc *= r;
      if (acc > n) return false;
    }
    return true;
  };
  u64 r = static_cast<u64>(std::pow(static_cast<long double>(n), 1.0L / k));
  while (r > 0 && !fits(r)) --r;
  while (fits(r + 1)) ++r;
  return r;
}

bool is_perfect_power(u64 n, unsigned k, u64* root) {
  const u64 r = iroot(n, k);
  u128 acc = 1;
  for (unsigned i = 0; i < k; ++i) acc *= r;
  if (acc != n) return false;
  if (root) *root = r;
  return true;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  static constexpr std::array<u64, 12> kBases = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 p : kBases) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  unsigned r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (u64 a : kBases) {
    if (miller_rabin_witness(n, a, d, r)) return false;
  }
  return true;
}

std::vector<u64> primes_up_to(u64 limit) {
  std::vector<u64> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(limit + 1, false);
  for (u64 i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    if (i <= limit / i) {
      for (u64 j = i * i; j <= limit; j += i) composite[j] = true;
    }
  }
  return primes;
}

Factorization::Factorization(u64 n, std::vector<PrimePower> factors)
    : n_(n), factors_(std::move(factors)) {
  if (n_ == 0) throw std::invalid_argument("Factorization: n must be positive");
}

bool Factorization::squarefree() const {
  return std::all_of(factors_.begin(), factors_.end(),
                     [](const PrimePower& f) { return f.e == 1; });
}

Factorization factorize(u64 n) {
  if (n == 0) throw std::invalid_argument("factorize: n must be positive");
  const u64 original = n;
  std::vector<PrimePower> out;
  auto take = [&](u64 p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) out.push_back({p, e});
    return e > 0;
  };
  take(2);
  take(3);
  // 6k +- 1 wheel; the prime test on the cofactor keeps large primes cheap.
  bool cofactor_checked = false;
  for (u64 d = 5; d <= n / d; d += 6) {
    const bool hit = take(d) | take(d + 2);
    if (hit) cofactor_checked = false;
    if (!cofactor_checked && d > 1000) {
      if (is_prime(n)) break;
      cofactor_checked = true;
    }
  }
  if (n > 1) out.push_back({n, 1});
  return Factorization(original, std::move(out));
}

int mobius(const Factorization& f) {
  if (!f.squarefree()) return 0;
  return (f.nu() % 2 == 0) ? 1 : -1;
}

int mobius(u64 n) { return mobius(factorize(n)); }

u64 binomial(u64 n, u64 k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  u128 r = 1;
  for (u64 i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > kMax) throw OverflowError("binomial: result exceeds 64 bits");
  }
  return static_cast<u64>(r);
}

u64 divisor_count(const Factorization& f, unsigned k) {
  if (k == 0) throw std::invalid_argument("divisor_count: k must be positive");
  u64 out = 1;
  for (const auto& [p, e] : f.factors()) {
    out = checked_mul(out, binomial(static_cast<u64>(e) + k - 1, k - 1));
  }
  return out;
}

u64 divisor_count(u64 n, unsigned k) { return divisor_count(factorize(n), k); }

std::size_t SfreeSegment::count() const {
  return static_cast<std::size_t>(std::count(flags.begin(), flags.end(), std::uint8_t{1}));
}

SfreeSieve::SfreeSieve(unsigned s, u64 limit) : s_(s), limit_(limit) {
  if (s < 2) throw std::invalid_argument("SfreeSieve: s must be >= 2");
  for (u64 p : primes_up_to(iroot(limit, s))) {
    prime_powers_.push_back(checked_pow(p, s));
  }
}

void SfreeSieve::fill(u64 lo, u64 hi, std::vector<std::uint8_t>& out) const {
  if (lo == 0 || lo > hi) throw std::invalid_argument("SfreeSieve::fill: need 1 <= lo <= hi");
  if (hi > limit_) throw std::invalid_argument("SfreeSieve::fill: window exceeds sieve limit");
  out.assign(hi - lo + 1, 1);
  for (u64 pp : prime_powers_) {
    if (pp > hi) break;
    const u64 r = lo % pp;
    if (r != 0 && hi - lo < pp - r) continue;
    u64 m = (r == 0) ? lo : lo + (pp - r);
    while (true) {
      out[m - lo] = 0;
      if (hi - m < pp) break;
      m += pp;
    }
  }
}

SfreeSegment sfree_segment(unsigned s, u64 lo, u64 hi, std::size_t segment_size) {
  if (lo == 0 || lo > hi) throw std::invalid_argument("sfree_segment: need 1 <= lo <= hi");
  if (segment_size == 0) throw std::invalid_argument("sfree_segment: segment size must be positive");
  if (hi - lo >= std::numeric_limits<std::size_t>::max() / 2) {
    throw OverflowError("sfree_segment: window too large");
  }
  const SfreeSieve sieve(s, hi);
  SfreeSegment seg{s, lo, hi, {}};
  seg.flags.resize(hi - lo + 1);
  std::vector<std::uint8_t> block;
  for (u64 a = lo;; a += segment_size) {
    const u64 b = (hi - a < segment_size - 1) ? hi : a + segment_size - 1;
    sieve.fill(a, b, block);
    std::copy(block.begin(), block.end(), seg.flags.begin() + static_cast<std::ptrdiff_t>(a - lo));
    if (b == hi) break;
  }
  return seg;
}

SquarefullSplit squarefull_decompose(u64 u) {
  const Factorization f = factorize(u);
  u64 w = 1, t = 1;
  for (const auto& [p, e] : f.factors()) {
    if (e == 1) {
      w *= p;
    } else {
      t *= checked_pow(p, e);
    }
  }
  return {w, t};
}

bool is_squarefull(u64 t) {
  const Factorization f = factorize(t);
  return std::all_of(f.factors().begin(), f.factors().end(),
                     [](const PrimePower& pp) { return pp.e >= 2; });
}

u64 count_squarefull(u64 z) {
  if (z == 0) throw std::invalid_argument("count_squarefull: z must be positive");
  const u64 bmax = iroot(z, 3);
  const SfreeSegment squarefree = sfree_segment(2, 1, bmax);
  u64 total = 0;
  for (u64 b = 1; b <= bmax; ++b) {
    if (!squarefree.is_sfree(b)) continue;
    total += iroot(z / (b * b * b), 2);
  }
  return total;
}

}  // namespace powersieve
