#include "powersieve/characters.hpp"

#include <cmath>
#include <limits>
#include <numeric>

namespace powersieve {

bool is_admissible(u64 p, unsigned s) {
  return p > 2 && is_prime(p) && std::gcd<u64>(s, p - 1) >= 2;
}

u64 find_primitive_root(u64 p) {
  if (p < 3 || !is_prime(p)) throw std::invalid_argument("find_primitive_root: p must be an odd prime");
  const Factorization f = factorize(p - 1);
  for (u64 g = 2; g < p; ++g) {
    bool primitive = true;
    for (const auto& [q, e] : f.factors()) {
      if (powmod(g, (p - 1) / q, p) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) return g;
  }
  throw std::logic_error("find_primitive_root: no generator found");
}

Character::Character(u64 p, unsigned s, u64 power) : p_(p), s_(s), power_(power) {
  if (s < 2) throw std::invalid_argument("Character: s must be >= 2");
  if (p < 3 || !is_prime(p)) throw std::invalid_argument("Character: p must be an odd prime");
  if (p > std::numeric_limits<std::uint32_t>::max()) {
    throw std::invalid_argument("Character: modulus too large for the dlog table");
  }
  d_ = static_cast<unsigned>(std::gcd<u64>(s, p - 1));
  if (d_ < 2) {
    throw InadmissiblePrime("inadmissible prime " + std::to_string(p) + " for s = " + std::to_string(s));
  }
  power_ %= d_;
  if (power_ == 0) throw std::invalid_argument("Character: power must be non-zero mod d (principal)");
  g_ = find_primitive_root(p);
  dlog_.assign(p, 0);
  u64 x = 1;
  for (u64 k = 0; k + 1 < p; ++k) {
    dlog_[x] = static_cast<std::uint32_t>(k);
    x = x * g_ % p;
  }
  const UnitRoots roots(d_);
  for (unsigned k = 0; k < d_; ++k) roots_.push_back(roots[k]);
}

Character order_s_character(u64 p, unsigned s) { return Character(p, s, 1); }

cplx gauss_sum(const Character& chi) {
  const u64 p = chi.modulus();
  if (chi.power() % chi.order() == 0) throw std::invalid_argument("gauss_sum: principal character");
  const UnitRoots e(p);
  KahanSum<cplx> acc;
  for (u64 b = 1; b < p; ++b) acc += chi(b) * e[b];
  return acc.value();
}

cplx pair_char_sum(const Character& chi_p, const Character& chi_q, u64 x) {
  if (chi_p.modulus() == chi_q.modulus()) throw std::invalid_argument("pair_char_sum: p must differ from q");
  KahanSum<cplx> acc;
  for (u64 n = 1; n <= x; ++n) {
    const auto a = chi_p.exponent(n);
    const auto b = chi_q.exponent(n);
    if (a && b) acc += chi_p.root(*a) * std::conj(chi_q.root(*b));
  }
  return acc.value();
}

cplx pair_char_sum(u64 p, u64 q, unsigned s, u64 x) {
  if (p == q) throw std::invalid_argument("pair_char_sum: p must differ from q");
  return pair_char_sum(order_s_character(p, s), order_s_character(q, s), x);
}

double polya_vinogradov_ratio(cplx sum, u64 p, u64 q) {
  const double m = static_cast<double>(p) * static_cast<double>(q);
  return std::abs(sum) / (std::sqrt(m) * std::log(m));
}

}  // namespace powersieve
