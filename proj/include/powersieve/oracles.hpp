// oracles.hpp
// Brute-force reference computations. Each one takes the most direct
// route to its quantity and shares no code path with the routine it
// checks: no sieving tables, no CRT, no Hensel lifting, no elimination.

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "powersieve/arithmetic.hpp"
#include "powersieve/expsums.hpp"
#include "powersieve/numeric.hpp"

namespace powersieve::oracle {

// No d >= 2 with d^s | n, checked by dividing by every d^s <= n.
bool is_sfree(u64 n, unsigned s);

// prefix[x] = #{n <= x : n, n + 1 both s-free}, x in [0, X].
std::vector<u64> twin_prefix(unsigned s, u64 X);

// mu(0..N) by the classic additive sieve.
std::vector<int> mobius_sieve(u64 N);

// d_k(n) by enumerating ordered factorizations.
u64 ordered_factorizations(u64 n, unsigned k);

// squarefull[z] prefix counts for z in [0, Z], via smallest prime factors.
std::vector<u64> squarefull_prefix(u64 Z);

u64 multiplicative_order(u64 a, u64 p);
u64 primitive_root(u64 p);

// Character mod p of order d = gcd(s, p - 1) with exponent table found by
// walking powers of the exhaustively found generator.
class Char {
 public:
  Char(u64 p, unsigned s, u64 power = 1);
  u64 p() const { return p_; }
  unsigned d() const { return d_; }
  // e(exponent / d), or 0 when p | n.
  cplx operator()(i64 n) const;

 private:
  u64 p_;
  unsigned d_;
  u64 power_;
  std::vector<i64> log_;
};

cplx e(i64 numerator, u64 denominator);

cplx gauss_sum(u64 p, unsigned s);
cplx pair_sum(u64 p, u64 q, unsigned s, u64 x);

// Double loops over a, b in [1, m].
cplx s1(u64 p, unsigned s, i64 c, i64 d, int sign, u64 power = 1);
cplx s2(u64 m, unsigned s, i64 c, i64 d, int sign);
cplx s_full(const ExpSumParams& params);

cplx completion_sum(i64 lo, i64 hi, i64 freq, u64 modulus);

// Direct scan over n <= x.
u64 count_N(unsigned s, u64 x, u64 j, u64 k);

// Triple loop over j, u, k.
u64 quadruple(unsigned s, u64 x, u64 J, u64 K, int sign);

// #{j in [0, k^s) : j^s u = -sign (mod k^s)} for each (u, sign) query, from a
// single exhaustive scan of j mod k^s.
std::vector<u64> hensel_scan(unsigned s, u64 k, const std::vector<std::pair<u64, int>>& queries);

}  // namespace powersieve::oracle
