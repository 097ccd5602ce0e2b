// arithmetic.hpp
// Integer infrastructure: checked 64-bit arithmetic, factorization,
// Moebius and divisor functions, the segmented s-free sieve and
// squarefull decomposition.

#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace powersieve {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

// Raised whenever an intermediate value does not fit in 64 bits.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

u64 checked_mul(u64 a, u64 b);
u64 checked_add(u64 a, u64 b);
u64 checked_pow(u64 base, unsigned exponent);

u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 base, u64 exponent, u64 m);
// Inverse of a modulo m; throws std::domain_error when gcd(a, m) != 1.
u64 invmod(u64 a, u64 m);
// Representative of a in [0, m).
u64 reduce_signed(i64 a, u64 m);

// floor(n^(1/k)) for k >= 1.
u64 iroot(u64 n, unsigned k);
// True when n = m^k for some integer m; stores m in *root if given.
bool is_perfect_power(u64 n, unsigned k, u64* root = nullptr);

bool is_prime(u64 n);
// All primes <= limit, ascending.
std::vector<u64> primes_up_to(u64 limit);

struct PrimePower {
  u64 p;
  unsigned e;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

class Factorization {
 public:
  Factorization() = default;
  Factorization(u64 n, std::vector<PrimePower> factors);

  u64 n() const { return n_; }
  const std::vector<PrimePower>& factors() const { return factors_; }
  // Number of distinct prime divisors.
  std::size_t nu() const { return factors_.size(); }
  bool squarefree() const;

 private:
  u64 n_ = 1;
  std::vector<PrimePower> factors_;
};

// Trial division with a deterministic Miller-Rabin exit for prime cofactors.
Factorization factorize(u64 n);

int mobius(u64 n);
int mobius(const Factorization& f);

// Piltz divisor function d_k(n) = prod C(e + k - 1, k - 1).
u64 divisor_count(u64 n, unsigned k);
u64 divisor_count(const Factorization& f, unsigned k);

u64 binomial(u64 n, u64 k);

// Flags for [lo, hi]: flags[i] == 1 iff lo + i is divisible by no p^s.
struct SfreeSegment {
  unsigned s = 2;
  u64 lo = 1;
  u64 hi = 1;
  std::vector<std::uint8_t> flags;

  bool is_sfree(u64 n) const { return flags[n - lo] != 0; }
  std::size_t count() const;
};

inline constexpr std::size_t kDefaultSegmentSize = std::size_t{1} << 16;

// Holds the prime powers p^s, p <= limit^(1/s), needed to sieve any
// window inside [1, limit]. Immutable after construction.
class SfreeSieve {
 public:
  SfreeSieve(unsigned s, u64 limit);

  unsigned s() const { return s_; }
  u64 limit() const { return limit_; }
  const std::vector<u64>& prime_powers() const { return prime_powers_; }

  // Writes flags for [lo, hi] into out (resized to hi - lo + 1).
  void fill(u64 lo, u64 hi, std::vector<std::uint8_t>& out) const;

 private:
  unsigned s_;
  u64 limit_;
  std::vector<u64> prime_powers_;
};

SfreeSegment sfree_segment(unsigned s, u64 lo, u64 hi,
                           std::size_t segment_size = kDefaultSegmentSize);

// u = w * t with w squarefree, t squarefull, gcd(w, t) = 1. 1 is squarefull.
struct SquarefullSplit {
  u64 w;
  u64 t;
};
SquarefullSplit squarefull_decompose(u64 u);

bool is_squarefull(u64 t);

// Number of squarefull t <= z, counted as a^2 b^3 with b squarefree.
u64 count_squarefull(u64 z);

}  // namespace powersieve
