#include "powersieve/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "powersieve/parallel.hpp"

namespace powersieve {

namespace {

void require_pair_set(const SievePrimeSet& pset, const char* who) {
  if (pset.size() < 2) throw std::invalid_argument(std::string(who) + ": need at least two sieve primes");
}

// values[i][k] = chi_{p_i}(n_k) over the support points n_k in ascending order.
std::vector<std::vector<cplx>> character_table(const Weights& w, const std::vector<Character>& chars) {
  return parallel_map(chars.size(), [&](std::size_t i) {
    std::vector<cplx> row;
    row.reserve(w.support().size());
    for (const auto& [n, weight] : w.support()) row.push_back(chars[i](n));
    return row;
  });
}

// Matrix of sum_n w(n) chi_i(n) conj(chi_j(n)), row-major, P x P.
std::vector<cplx> pair_sums(const Weights& w, const std::vector<std::vector<cplx>>& table) {
  const std::size_t P = table.size();
  std::vector<double> weights;
  weights.reserve(w.support().size());
  for (const auto& [n, weight] : w.support()) weights.push_back(weight);
  auto rows = parallel_map(P, [&](std::size_t i) {
    std::vector<cplx> row(P);
    for (std::size_t j = 0; j < P; ++j) {
      KahanSum<cplx> acc;
      for (std::size_t k = 0; k < weights.size(); ++k) {
        acc += weights[k] * table[i][k] * std::conj(table[j][k]);
      }
      row[j] = acc.value();
    }
    return row;
  });
  std::vector<cplx> out;
  out.reserve(P * P);
  for (const auto& row : rows) out.insert(out.end(), row.begin(), row.end());
  return out;
}

}  // namespace

Weights::Weights(unsigned s) : s_(s) {
  if (s < 2) throw std::invalid_argument("Weights: s must be >= 2");
}

Weights Weights::interval(unsigned s, u64 lo, u64 hi, double value) {
  if (lo == 0 || lo > hi) throw std::invalid_argument("Weights::interval: need 1 <= lo <= hi");
  Weights w(s);
  for (u64 n = lo;; ++n) {
    w.set(n, value);
    if (n == hi) break;
  }
  return w;
}

Weights Weights::point(unsigned s, u64 n, double value) {
  Weights w(s);
  w.set(n, value);
  return w;
}

void Weights::set(u64 n, double value) {
  if (n == 0) throw std::invalid_argument("Weights: w(0) must vanish");
  if (!(value >= 0.0)) throw std::invalid_argument("Weights: weights must be nonnegative");
  if (value == 0.0) {
    support_.erase(n);
  } else {
    support_[n] = value;
  }
}

void Weights::add(u64 n, double value) {
  const auto it = support_.find(n);
  set(n, (it == support_.end() ? 0.0 : it->second) + value);
}

double Weights::total() const {
  KahanSum<double> acc;
  for (const auto& [n, value] : support_) acc += value;
  return acc.value();
}

SievePrimeSet SievePrimeSet::from_primes(unsigned s, std::vector<u64> primes, u64 char_power) {
  std::sort(primes.begin(), primes.end());
  if (std::adjacent_find(primes.begin(), primes.end()) != primes.end()) {
    throw std::invalid_argument("SievePrimeSet: duplicate prime");
  }
  for (u64 p : primes) {
    if (!is_admissible(p, s)) {
      throw InadmissiblePrime("SievePrimeSet: " + std::to_string(p) + " is not admissible for s = " + std::to_string(s));
    }
  }
  SievePrimeSet out;
  out.s_ = s;
  out.primes_ = std::move(primes);
  out.char_power_ = char_power;
  return out;
}

std::vector<Character> SievePrimeSet::characters() const {
  std::vector<Character> out;
  out.reserve(primes_.size());
  for (u64 p : primes_) out.emplace_back(p, s_, char_power_);
  return out;
}

SievePrimeSet admissible_primes(unsigned s, u64 qlo, u64 qhi, u64 exclude) {
  if (s < 2) throw std::invalid_argument("admissible_primes: s must be >= 2");
  if (qlo >= qhi) throw std::invalid_argument("admissible_primes: need qlo < qhi");
  if (exclude == 0) throw std::invalid_argument("admissible_primes: exclude must be positive");
  SievePrimeSet out;
  out.s_ = s;
  for (u64 p : primes_up_to(qhi)) {
    if (p <= qlo || exclude % p == 0) continue;
    if (is_admissible(p, s)) out.primes_.push_back(p);
  }
  const double q = static_cast<double>(qhi);
  out.density_ratio_ = static_cast<double>(out.primes_.size()) * std::log(q) / q;
  return out;
}

bool support_within_bound(const Weights& w, std::size_t P) {
  if (w.empty()) return true;
  return std::log(static_cast<double>(w.max_support())) < static_cast<double>(P);
}

double sieve_lhs(const Weights& w) {
  KahanSum<double> acc;
  for (const auto& [n, value] : w.support()) {
    if (is_perfect_power(n, w.s())) acc += value;
  }
  return acc.value();
}

SieveRhs sieve_rhs(const Weights& w, const SievePrimeSet& pset) {
  require_pair_set(pset, "sieve_rhs");
  const std::size_t P = pset.size();
  const auto table = character_table(w, pset.characters());
  const auto sums = pair_sums(w, table);
  KahanSum<double> off;
  for (std::size_t i = 0; i < P; ++i) {
    for (std::size_t j = 0; j < P; ++j) {
      if (i != j) off += std::abs(sums[i * P + j]);
    }
  }
  const double p = static_cast<double>(P);
  return {w.total() / p, off.value() / (p * p), support_within_bound(w, P)};
}

SigmaReport sigma_quantity(const Weights& w, const SievePrimeSet& pset) {
  require_pair_set(pset, "sigma_quantity");
  const std::size_t P = pset.size();
  const auto table = character_table(w, pset.characters());

  SigmaReport out;
  KahanSum<double> sigma;
  std::size_t k = 0;
  for (const auto& [n, weight] : w.support()) {
    cplx inner{};
    for (std::size_t i = 0; i < P; ++i) inner += table[i][k];
    sigma += weight * std::norm(inner);
    ++k;
  }
  out.sigma = sigma.value();

  const auto sums = pair_sums(w, table);
  KahanSum<cplx> expansion;
  KahanSum<double> diagonal;
  for (std::size_t i = 0; i < P; ++i) {
    for (std::size_t j = 0; j < P; ++j) {
      expansion += sums[i * P + j];
      if (i == j) diagonal += sums[i * P + j].real();
    }
  }
  out.expansion = expansion.value();
  out.diagonal = diagonal.value();
  out.weight_total = w.total();
  out.residual = relative_residual(cplx(out.sigma), out.expansion);
  return out;
}

InnerCount inner_count_identity(u64 m, const SievePrimeSet& pset) {
  if (m == 0) throw std::invalid_argument("inner_count_identity: m must be positive");
  InnerCount out;
  cplx acc{};
  for (const Character& chi : pset.characters()) {
    const u64 p = chi.modulus();
    acc += chi(powmod(m, pset.s(), p));
    if (m % p != 0) ++out.via_divisibility;
  }
  // Every term is exactly 0 or 1, so the sum is an exact small integer.
  if (std::abs(acc.imag()) > 1e-9) throw std::logic_error("inner_count_identity: non-real character sum");
  out.via_characters = std::llround(acc.real());
  return out;
}

RemarkAReport remark_a_counterexample(const SievePrimeSet& pset) {
  require_pair_set(pset, "remark_a_counterexample");
  RemarkAReport out;
  out.m = 1;
  for (u64 p : pset.primes()) out.m = checked_mul(out.m, p);
  out.n0 = checked_pow(out.m, pset.s());
  const Weights w = Weights::point(pset.s(), out.n0);
  out.lhs = sieve_lhs(w);
  out.rhs = sieve_rhs(w, pset);
  out.support_bound_violated = !out.rhs.support_bound_ok;
  const double P = static_cast<double>(pset.size());
  out.exact = out.lhs == 1.0 && out.rhs.term1 == 1.0 / P && out.rhs.term2 == 0.0;
  return out;
}

Weights twin_weights(unsigned s, u64 u, u64 J, u64 K, u64 U, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("twin_weights: sign must be +1 or -1");
  if (u == 0 || J == 0 || K == 0 || U == 0) throw std::invalid_argument("twin_weights: parameters must be positive");
  const u64 JsU = checked_mul(checked_pow(J, s), U);
  const u64 Ks = checked_pow(K, s);
  const u64 low_num = sign > 0 ? checked_add(JsU, 1) : JsU - 1;
  const u64 low_den = checked_mul(checked_pow(2, s), Ks);
  const u64 L = std::max<u64>((low_num + low_den - 1) / low_den, 1);
  const u64 high_num = checked_mul(checked_pow(2, s + 1), JsU);
  const u64 M = (sign > 0 ? checked_add(high_num, 1) : high_num - 1) / Ks;
  const u64 shift = checked_pow(u, s - 1);

  Weights w(s);
  for (u64 k = K + 1; k <= 2 * K; ++k) {
    const u64 ks = checked_pow(k, s);
    for (u64 v = L; v <= M; ++v) {
      const u64 kv = checked_mul(ks, v);
      const u64 m = sign > 0 ? kv - 1 : checked_add(kv, 1);
      if (m == 0 || m % u != 0) continue;
      w.add(checked_mul(m, shift), 1.0);
    }
  }
  return w;
}

}  // namespace powersieve
