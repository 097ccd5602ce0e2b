// sieve.hpp
// The power sieve: weighted counts of s-th powers bounded through
// character pair sums over a set of admissible primes.
//
//   S(A)  = sum_m w(m^s)
//   term1 = P^-1 sum_n w(n)
//   term2 = P^-2 sum_{p != q} |sum_n w(n) chi_p(n) conj(chi_q(n))|
//   Sigma = sum_n w(n) |sum_p chi_p(n)|^2
//
// The sieve inequality S(A) << term1 + term2 needs w(n) = 0 for
// n >= e^P. That condition is reported, not enforced, so that runs
// outside it (the single-point counterexample) can be demonstrated.

#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "powersieve/arithmetic.hpp"
#include "powersieve/characters.hpp"

namespace powersieve {

// Finitely supported nonnegative weights on the positive integers.
class Weights {
 public:
  explicit Weights(unsigned s);

  static Weights interval(unsigned s, u64 lo, u64 hi, double value = 1.0);
  static Weights point(unsigned s, u64 n, double value = 1.0);

  // Zero removes the point; n = 0 and negative values are rejected.
  void set(u64 n, double value);
  void add(u64 n, double value);

  unsigned s() const { return s_; }
  const std::map<u64, double>& support() const { return support_; }
  bool empty() const { return support_.empty(); }
  u64 max_support() const { return support_.empty() ? 0 : support_.rbegin()->first; }
  double total() const;

 private:
  unsigned s_;
  std::map<u64, double> support_;
};

class SievePrimeSet {
 public:
  // Validates admissibility and rejects duplicates; primes are sorted.
  static SievePrimeSet from_primes(unsigned s, std::vector<u64> primes, u64 char_power = 1);

  unsigned s() const { return s_; }
  const std::vector<u64>& primes() const { return primes_; }
  std::size_t size() const { return primes_.size(); }
  u64 char_power() const { return char_power_; }

  // P log(qhi) / qhi when built by admissible_primes, else 0.
  double density_ratio() const { return density_ratio_; }

  // One character per prime, chi = canonical^char_power.
  std::vector<Character> characters() const;

 private:
  friend SievePrimeSet admissible_primes(unsigned, u64, u64, u64);
  unsigned s_ = 2;
  std::vector<u64> primes_;
  u64 char_power_ = 1;
  double density_ratio_ = 0.0;
};

// Primes p in (qlo, qhi] with gcd(s, p - 1) >= 2 and p not dividing exclude.
SievePrimeSet admissible_primes(unsigned s, u64 qlo, u64 qhi, u64 exclude = 1);

// True iff every support point n satisfies n < e^P.
bool support_within_bound(const Weights& w, std::size_t P);

double sieve_lhs(const Weights& w);

struct SieveRhs {
  double term1 = 0.0;
  double term2 = 0.0;
  bool support_bound_ok = true;
  double total() const { return term1 + term2; }
};

SieveRhs sieve_rhs(const Weights& w, const SievePrimeSet& pset);

struct SigmaReport {
  double sigma = 0.0;           // sum_n w(n) |sum_p chi_p(n)|^2
  cplx expansion;               // sum_{p,q} sum_n w(n) chi_p(n) conj(chi_q(n))
  double diagonal = 0.0;        // p == q part of the expansion
  double weight_total = 0.0;    // sum_n w(n)
  double residual = 0.0;        // relative_residual(sigma, expansion)
  bool expansion_ok(double tol = 1e-6) const { return residual <= tol; }
};

SigmaReport sigma_quantity(const Weights& w, const SievePrimeSet& pset);

// sum_{p in P} chi_p(m^s), evaluated through the characters and as
// #{p in P : p does not divide m}.
struct InnerCount {
  i64 via_characters = 0;
  i64 via_divisibility = 0;
  bool agree() const { return via_characters == via_divisibility; }
};

InnerCount inner_count_identity(u64 m, const SievePrimeSet& pset);

// Single point w(m^s) = 1 with m the product of the sieve primes.
struct RemarkAReport {
  u64 m = 0;
  u64 n0 = 0;
  double lhs = 0.0;
  SieveRhs rhs;
  bool support_bound_violated = false;
  // lhs == 1 and rhs == (1/P, 0) exactly
  bool exact = false;
};

RemarkAReport remark_a_counterexample(const SievePrimeSet& pset);

// Weight translating twin equations j^s u + sign = k^s v into s-th powers:
// w(m u^(s-1)) = #{(k, v) : m = k^s v - sign, u | m, K < k <= 2K, L <= v <= M}
// with L = max(ceil(2^-s K^-s (J^s U + sign)), 1), M = floor(K^-s (2^(s+1) J^s U + sign)).
Weights twin_weights(unsigned s, u64 u, u64 J, u64 K, u64 U, int sign);

}  // namespace powersieve
