// expsums.hpp
// Complete exponential sums attached to the congruence a^s b = sign.
//
// Sign convention: one sign value sigma in {+1, -1}. The character and
// congruence argument is always a^s b - sigma, and the twin equation it
// comes from is j^s u + sigma = k^s v.
//
//   S1(p; c, d)   = sum_{a,b=1}^{p} chi_p(a^s b - sigma) e((c a + d b) / p)
//   S2(m; c, d)   = sum_{a,b=1, m | a^s b - sigma}^{m} e((c a + d b) / m)
//   S(u, pq; g, h) = sum_{a,b=1, u | a^s b - sigma}^{upq}
//                    chi_p(a^s b - sigma) conj(chi_q(a^s b - sigma)) e((g a + h b) / upq)
//
// S(u, pq; g, h) factors as S1(p; c, d) conj(S1(q; -c, -d)) prod_{r^f || u} S2(r^f; c_r, d_r),
// with (c, d) from crt_cd and c_r = c (u / r^f)^-1 mod r^f. For prime-power u
// the twist is trivial and c_r = c.

#pragma once

#include <cstdint>

#include "powersieve/arithmetic.hpp"
#include "powersieve/characters.hpp"
#include "powersieve/numeric.hpp"

namespace powersieve {

inline constexpr u64 kFullSumModulusCap = 3000;

struct ExpSumParams {
  u64 u = 1;
  u64 p = 0;
  u64 q = 0;
  unsigned s = 2;
  i64 gamma = 0;
  i64 delta = 0;
  int sign = 1;
  // Characters used are canonical^power.
  u64 power_p = 1;
  u64 power_q = 1;

  u64 modulus() const { return checked_mul(checked_mul(u, p), q); }
  // Throws std::invalid_argument (or InadmissiblePrime) on bad parameters.
  void validate() const;
};

cplx s1(const Character& chi, i64 c, i64 d, int sign);
cplx s1(u64 p, unsigned s, i64 c, i64 d, int sign);

// Exact sum over the full (a, b) grid mod m; O(m^2).
cplx congruence_sum(u64 m, unsigned s, i64 c, i64 d, int sign);

// S2 for one prime r, reusing a^-s (mod r): b is eliminated as
// b = sigma a^-s, so each evaluation is O(r).
class PrimeS2 {
 public:
  PrimeS2(u64 r, unsigned s);
  cplx operator()(i64 c, i64 d, int sign) const;
  u64 prime() const { return r_; }

 private:
  u64 r_;
  std::vector<u64> inv_pow_;  // inv_pow_[a] = a^-s mod r, a in [1, r)
  UnitRoots roots_;
};

// S2(r^f; c, d): O(r) elimination at f = 1, full double loop for f >= 2.
cplx s2(u64 r, unsigned f, unsigned s, i64 c, i64 d, int sign);

// Lemma bounds: (s(s+1) + 2) p for S1, and
// s(s+1) sqrt(p) gcd(p, c, d)^(1/2) + (s+1)^2 for S2 at a prime.
double s1_bound(u64 p, unsigned s);
double s2_bound(u64 p, unsigned s, i64 c, i64 d);

struct CrtCoefficients {
  u64 c = 0;
  u64 d = 0;
};

// Unique (c, d) mod upq with g = quc (mod p), g = puc (mod q), g = pqc (mod u)
// and the same system for d with h.
CrtCoefficients crt_cd(u64 u, u64 p, u64 q, i64 gamma, i64 delta);

// Direct evaluation; rejects upq > kFullSumModulusCap.
cplx s_full(const ExpSumParams& params);

// Right-hand side of the factorization for the given (c, d).
cplx factorized_s_full(const ExpSumParams& params, const CrtCoefficients& cd);

struct FactorizationCheck {
  cplx full;
  cplx product;
  CrtCoefficients cd;
  double residual = 0.0;  // |full - product| / (1 + |full|)
  bool passed(double tol = 1e-6) const { return residual <= tol; }
};

FactorizationCheck verify_factorization(const ExpSumParams& params);

// sum_{lo < n <= hi} e(-freq n / modulus), closed geometric form.
cplx completion_sum(i64 lo, i64 hi, i64 freq, u64 modulus);
// min(hi - lo, ||freq / modulus||^-1) + 1.
double completion_bound(i64 lo, i64 hi, i64 freq, u64 modulus);

struct BoundReport {
  u64 p = 0;
  unsigned s = 0;
  int sign = 1;
  u64 cases = 0;
  u64 violations = 0;
  double max_ratio = 0.0;  // max |S2| / bound
  bool passed() const { return violations == 0; }
};

// All (c, d) with p not dividing c or d: |S2| <= s(s+1) sqrt(p) + (s+1)^2. p <= 500.
BoundReport chalk_smith_check(u64 p, unsigned s, int sign);
// All (c, d) in [0, p)^2 against s2_bound (gcd factor included).
BoundReport s2_bound_check(u64 p, unsigned s, int sign);

}  // namespace powersieve
