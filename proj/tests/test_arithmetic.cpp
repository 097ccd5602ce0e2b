#include <limits>
#include <numeric>

#include "doctest.h"
#include "powersieve/arithmetic.hpp"
#include "powersieve/oracles.hpp"
#include "powersieve/twins.hpp"

using namespace powersieve;

namespace {

// Plain trial division, independent of the wheel in factorize.
std::vector<PrimePower> trial_factors(u64 n) {
  std::vector<PrimePower> out;
  for (u64 d = 2; d * d <= n; ++d) {
    unsigned e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e) out.push_back({d, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

}  // namespace

TEST_CASE("checked arithmetic rejects overflow") {
  const u64 big = std::numeric_limits<u64>::max();
  CHECK(checked_mul(1u << 31, 1u << 31) == (u64{1} << 62));
  CHECK_THROWS_AS(checked_mul(u64{1} << 32, u64{1} << 32), OverflowError);
  CHECK_THROWS_AS(checked_add(big, 1), OverflowError);
  CHECK_THROWS_AS(checked_pow(10, 20), OverflowError);
  CHECK(checked_pow(10, 19) == 10000000000000000000ull);
  CHECK(mulmod(big - 1, big - 1, big) == 1);
  u64 slow = 1;
  for (int i = 0; i < 200; ++i) slow = slow * 3 % 1000000007;
  CHECK(powmod(3, 200, 1000000007) == slow);
  CHECK(invmod(3, 7) == 5);
  CHECK_THROWS_AS(invmod(6, 9), std::domain_error);
  CHECK(reduce_signed(-1, 7) == 6);
  CHECK(reduce_signed(-14, 7) == 0);
}

TEST_CASE("integer roots and primality") {
  CHECK(iroot(999999, 2) == 999);
  CHECK(iroot(1000000, 2) == 1000);
  CHECK(iroot(std::numeric_limits<u64>::max(), 2) == 4294967295ull);
  CHECK(iroot(std::numeric_limits<u64>::max(), 3) == 2642245);
  CHECK(iroot(0, 3) == 0);
  u64 root = 0;
  CHECK(is_perfect_power(3125, 5, &root));
  CHECK(root == 5);
  CHECK_FALSE(is_perfect_power(3124, 5));
  CHECK(primes_up_to(100).size() == 25);
  CHECK(is_prime(2305843009213693951ull));   // 2^61 - 1
  CHECK_FALSE(is_prime(3215031751ull));      // strong pseudoprime to 2, 3, 5, 7
  const auto primes = primes_up_to(10000);
  for (u64 n = 0; n <= 10000; ++n) {
    CHECK(is_prime(n) == std::binary_search(primes.begin(), primes.end(), n));
  }
}

TEST_CASE("factorize") {
  CHECK(factorize(1).factors().empty());
  CHECK(factorize(1).n() == 1);
  CHECK(factorize(12).factors() == std::vector<PrimePower>{{2, 2}, {3, 1}});
  CHECK(factorize(1000003).factors() == trial_factors(1000003));
  CHECK_THROWS_AS(factorize(0), std::invalid_argument);
  CHECK(factorize(18446744073709551615ull).factors() ==
        std::vector<PrimePower>{{3, 1}, {5, 1}, {17, 1}, {257, 1}, {641, 1}, {65537, 1}, {6700417, 1}});
  CHECK(factorize(2305843009213693951ull).factors() == std::vector<PrimePower>{{2305843009213693951ull, 1}});

  for (u64 n = 1; n <= 20000; ++n) {
    const Factorization f = factorize(n);
    REQUIRE(f.factors() == trial_factors(n));
    u64 product = 1;
    for (const auto& pp : f.factors()) product *= checked_pow(pp.p, pp.e);
    CHECK(product == n);
  }
}

TEST_CASE("mobius and divisor counts") {
  CHECK(mobius(1) == 1);
  CHECK(mobius(12) == 0);
  CHECK(mobius(30) == -1);
  const auto mu = oracle::mobius_sieve(100000);
  for (u64 n = 1; n <= 100000; ++n) REQUIRE(mobius(n) == mu[n]);

  CHECK(divisor_count(1, 5) == 1);
  CHECK(divisor_count(12, 2) == 6);
  CHECK(divisor_count(64, 6) == oracle::ordered_factorizations(64, 6));
  for (u64 n = 1; n <= 120; ++n) {
    for (unsigned k = 2; k <= 4; ++k) CHECK(divisor_count(n, k) == oracle::ordered_factorizations(n, k));
  }
  CHECK(binomial(10, 3) == 120);
  CHECK(binomial(3, 10) == 0);
}

TEST_CASE("d_{s(s+1)} on squarefree numbers") {
  for (unsigned s : {2u, 3u}) {
    const unsigned k = s * (s + 1);
    for (u64 w = 1; w <= 10000; ++w) {
      const Factorization f = factorize(w);
      if (!f.squarefree()) continue;
      CHECK(divisor_count(f, k) == checked_pow(k, static_cast<unsigned>(f.nu())));
    }
  }
}

TEST_CASE("sfree segments") {
  const SfreeSegment a = sfree_segment(2, 1, 10);
  for (u64 n = 1; n <= 10; ++n) CHECK(a.is_sfree(n) == (n != 4 && n != 8 && n != 9));
  CHECK_FALSE(sfree_segment(3, 8, 8).is_sfree(8));

  const SfreeSegment b = sfree_segment(2, 1, 100);
  u64 expected = 0;
  for (u64 n = 1; n <= 100; ++n) expected += oracle::is_sfree(n, 2);
  CHECK(expected == 61);
  CHECK(b.count() == 61);

  CHECK_THROWS_AS(sfree_segment(2, 5, 4), std::invalid_argument);
  CHECK_THROWS_AS(sfree_segment(2, 0, 4), std::invalid_argument);
}

TEST_CASE("sfree flags do not depend on the segment size") {
  for (unsigned s : {2u, 3u, 5u}) {
    const u64 lo = 999000, hi = 1003000;
    const SfreeSegment ref = sfree_segment(s, lo, hi);
    for (std::size_t seg : {1u, 7u, 64u, 4001u, 5000u}) {
      CHECK(sfree_segment(s, lo, hi, seg).flags == ref.flags);
    }
    for (u64 n = lo; n <= hi; ++n) REQUIRE(ref.is_sfree(n) == oracle::is_sfree(n, s));
  }
}

TEST_CASE("sfree windows far from the origin") {
  const u64 lo = 10000000000ull, hi = lo + 2000;
  const SfreeSegment seg = sfree_segment(2, lo, hi, 300);
  for (u64 n = lo; n <= hi; ++n) {
    bool free = true;
    for (const auto& pp : trial_factors(n)) free = free && pp.e < 2;
    REQUIRE(seg.is_sfree(n) == free);
  }
  CHECK_THROWS_AS(count_twin_sfree(2, std::numeric_limits<u64>::max()), OverflowError);
}

TEST_CASE("squarefull decomposition") {
  auto check = [](u64 u, u64 w, u64 t) {
    const SquarefullSplit r = squarefull_decompose(u);
    CHECK(r.w == w);
    CHECK(r.t == t);
  };
  check(1, 1, 1);
  check(12, 3, 4);
  check(360, 5, 72);
  const auto mu = oracle::mobius_sieve(100000);
  for (u64 u = 1; u <= 100000; ++u) {
    const auto [w, t] = squarefull_decompose(u);
    REQUIRE(w * t == u);
    CHECK(mu[w] != 0);
    CHECK(is_squarefull(t));
    CHECK(std::gcd(w, t) == 1);
  }
}

TEST_CASE("squarefull counts") {
  CHECK(count_squarefull(1) == 1);
  CHECK(count_squarefull(3) == 1);
  CHECK(count_squarefull(100) == 14);
  const auto prefix = oracle::squarefull_prefix(200000);
  CHECK(prefix[100] == 14);
  for (u64 z = 1; z <= 200000; z += (z < 2000 ? 1 : 97)) REQUIRE(count_squarefull(z) == prefix[z]);
}
