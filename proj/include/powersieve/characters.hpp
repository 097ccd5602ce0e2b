// characters.hpp
// Multiplicative characters mod an odd prime p whose s-th power is
// principal, together with Gauss sums and incomplete pair sums.
//
// With g the least primitive root and d = gcd(s, p - 1), the canonical
// character is chi(g^k) = e(k / d). Any chi^j with j != 0 (mod d) is also
// non-principal and trivial on s-th powers; `power` selects j.
// Values are carried as exponents in Z_d and only become complex numbers
// at summation boundaries.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "powersieve/arithmetic.hpp"
#include "powersieve/numeric.hpp"

namespace powersieve {

// gcd(s, p - 1) == 1: no non-principal character of order dividing s.
class InadmissiblePrime : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// p odd prime with gcd(s, p - 1) >= 2.
bool is_admissible(u64 p, unsigned s);

// Least g in [2, p - 1] of multiplicative order p - 1. p must be an odd prime.
u64 find_primitive_root(u64 p);

class Character {
 public:
  Character(u64 p, unsigned s, u64 power = 1);

  u64 modulus() const { return p_; }
  unsigned s() const { return s_; }
  unsigned order() const { return d_; }
  u64 generator() const { return g_; }
  u64 power() const { return power_; }

  // k with g^k = a (mod p), for a in [1, p - 1].
  u64 dlog(u64 a) const { return dlog_[a]; }

  // Exponent k in [0, d) with chi(n) = e(k / d); nullopt when p | n.
  std::optional<unsigned> exponent(u64 n) const {
    const u64 r = n % p_;
    if (r == 0) return std::nullopt;
    return static_cast<unsigned>(mulmod(power_, dlog_[r], d_));
  }
  std::optional<unsigned> exponent(i64 n) const { return exponent(reduce_signed(n, p_)); }

  cplx root(unsigned k) const { return roots_[k]; }

  cplx operator()(u64 n) const {
    const auto k = exponent(n);
    return k ? roots_[*k] : cplx{};
  }
  cplx operator()(i64 n) const { return (*this)(reduce_signed(n, p_)); }

 private:
  u64 p_;
  unsigned s_;
  unsigned d_;
  u64 g_;
  u64 power_;
  std::vector<std::uint32_t> dlog_;
  std::vector<cplx> roots_;
};

// Canonical character: power 1.
Character order_s_character(u64 p, unsigned s);

inline cplx char_eval(const Character& chi, i64 n) { return chi(n); }

// tau(chi) = sum_{b=1}^{p} chi(b) e(b / p).
cplx gauss_sum(const Character& chi);

// sum_{n <= x} chi_p(n) conj(chi_q(n)).
cplx pair_char_sum(const Character& chi_p, const Character& chi_q, u64 x);
cplx pair_char_sum(u64 p, u64 q, unsigned s, u64 x);

// |sum| / (sqrt(pq) log(pq)): the empirical Polya-Vinogradov constant.
double polya_vinogradov_ratio(cplx sum, u64 p, u64 q);

}  // namespace powersieve
