#include <cmath>
#include <numeric>
#include <limits>

#include "doctest.h"
#include "powersieve/oracles.hpp"
#include "powersieve/twins.hpp"

using namespace powersieve;

TEST_CASE("density constant") {
  CHECK(cs_constant(2, 2).value == 0.5);
  CHECK(cs_constant(3, 2).value == 0.75);
  CHECK_THROWS_AS(cs_constant(1, 100), std::invalid_argument);

  const CsConstant c = cs_constant(2, 1000);
  CHECK(c.log_tail == doctest::Approx(3.0 / 1000.0));
  // the tail bound covers the distance to a much longer truncation
  const CsConstant far = cs_constant(2, 1000000);
  CHECK(std::abs(c.value - far.value) <= c.abs_error());
  CHECK(std::abs(far.value - 0.3226340989) <= far.abs_error());

  const ConstantCheck k = cs_consistency(2, 100000, 100000);
  CHECK(k.consistent());
  CHECK(k.difference <= 1e-4);
  CHECK(cs_dirichlet_tail(2, 1000) > cs_dirichlet_tail(2, 10000));
}

TEST_CASE("Dirichlet partial sums against a direct evaluation") {
  const auto mu = oracle::mobius_sieve(2000);
  for (unsigned s : {2u, 3u}) {
    long double direct = 0;
    for (u64 n = 1; n <= 2000; ++n) {
      if (mu[n] == 0) continue;
      // d(n) for squarefree n is 2^nu(n); count divisors directly
      u64 d = 0;
      for (u64 k = 1; k <= n; ++k) d += (n % k == 0);
      direct += static_cast<long double>(mu[n]) * d / std::pow(static_cast<long double>(n), s);
    }
    CHECK(cs_dirichlet_partial(s, 2000) == doctest::Approx(static_cast<double>(direct)).epsilon(1e-12));
  }
}

TEST_CASE("twin counts") {
  CHECK(count_twin_sfree(2, 2) == 2);
  CHECK(count_twin_sfree(2, 20) == 7);
  const auto ref = oracle::twin_prefix(3, 10000);
  CHECK(count_twin_sfree(3, 10000) == ref[10000]);
  CHECK(oracle::twin_prefix(2, 20)[20] == 7);
  CHECK_THROWS_AS(count_twin_sfree(2, 0), std::invalid_argument);

  // prefix counts do not depend on the segment size or thread schedule
  const std::vector<u64> xs = {1, 2, 99, 100, 101, 5000, 65536, 65537, 70000};
  const auto base = twin_prefix_counts(2, xs);
  for (std::size_t seg : {1u, 3u, 1000u, 65536u}) CHECK(twin_prefix_counts(2, xs, seg) == base);
  const auto r2 = oracle::twin_prefix(2, 70000);
  for (std::size_t i = 0; i < xs.size(); ++i) CHECK(base[i] == r2[xs[i]]);
  CHECK_THROWS_AS(twin_prefix_counts(2, {5, 3}), std::invalid_argument);
}

TEST_CASE("N(x, j, k)") {
  CHECK(count_N(2, 1000, 3, 6) == 0);
  CHECK(count_N(2, 100, 2, 3) == 3);
  CHECK(oracle::count_N(2, 100, 2, 3) == 3);
  CHECK(count_N(2, 100, 1, 1) == 100);
  for (unsigned s : {2u, 3u}) {
    for (u64 j = 1; j <= 9; ++j) {
      for (u64 k = 1; k <= 9; ++k) {
        REQUIRE(count_N(s, 3000, j, k) == oracle::count_N(s, 3000, j, k));
      }
    }
  }
  // huge moduli saturate instead of overflowing
  CHECK(count_N(3, 1000, 3000000, 1) == 0);
  CHECK(count_N(2, std::numeric_limits<u64>::max() - 1, 1, 1) == std::numeric_limits<u64>::max() - 1);
}

TEST_CASE("decomposition identity") {
  // k must reach (x+1)^(1/s): at x = 3, s = 2 the k = 2 term (n = 3) matters
  CHECK(twin_count_by_decomposition(2, 3) == 2);
  const auto ref2 = oracle::twin_prefix(2, 3000);
  for (u64 x = 1; x <= 3000; ++x) REQUIRE(twin_count_by_decomposition(2, x) == static_cast<i64>(ref2[x]));
  const auto ref3 = oracle::twin_prefix(3, 2000);
  for (u64 x = 1; x <= 2000; ++x) REQUIRE(twin_count_by_decomposition(3, x) == static_cast<i64>(ref3[x]));
}

TEST_CASE("Hensel counts") {
  CHECK(hensel_count(2, 1, 5, 1) == 2);
  CHECK(hensel_solutions(2, 1, 5, 1) == std::vector<u64>{7, 18});
  CHECK(hensel_count(2, 1, 2, 1) == 0);
  CHECK(hensel_count(3, 7, 1, -1) == 1);
  CHECK_THROWS_AS(hensel_count(2, 6, 4, 1), std::invalid_argument);

  // p | s: no Newton lift, the branch search has to agree with the scan
  for (unsigned s : {2u, 4u, 6u}) {
    for (u64 k : {2, 4, 6, 8, 12}) {
      std::vector<std::pair<u64, int>> queries;
      for (u64 u = 1; u <= 15; ++u) {
        if (std::gcd(u, k) != 1) continue;
        queries.emplace_back(u, 1);
        queries.emplace_back(u, -1);
      }
      const auto ref = oracle::hensel_scan(s, k, queries);
      for (std::size_t i = 0; i < queries.size(); ++i) {
        REQUIRE(hensel_count(s, queries[i].first, k, queries[i].second) == ref[i]);
      }
    }
  }
  // every listed residue really solves the congruence
  for (u64 j : hensel_solutions(3, 5, 14, -1)) {
    const u64 m = checked_pow(14, 3);
    CHECK((mulmod(powmod(j, 3, m), 5, m) + m - 1) % m == 0);
  }
}

TEST_CASE("quadruple counts") {
  CHECK(quadruple_count({2, 100, 2, 20, 1}).count == 0);  // k^2 > 1600 > x
  for (int sign : {1, -1}) {
    const QuadrupleCount c = quadruple_count({2, 10000, 10, 5, sign});
    CHECK(c.count == oracle::quadruple(2, 10000, 10, 5, sign));
    CHECK(c.bound == doctest::Approx(quadruple_bound({2, 10000, 10, 5, sign})));
  }
  // large J takes the Hensel path
  for (int sign : {1, -1}) {
    CHECK(quadruple_count({2, 200000, 40, 3, sign}).count == oracle::quadruple(2, 200000, 40, 3, sign));
    CHECK(quadruple_count({3, 300000, 30, 2, sign}).count == oracle::quadruple(3, 300000, 30, 2, sign));
  }
  // swapping the roles of (j, u) and (k, v)
  for (u64 J : {2, 3, 7}) {
    for (u64 K : {2, 4, 9}) {
      CHECK(quadruple_count({2, 5000, J, K, 1}).count == quadruple_count({2, 4999, K, J, -1}).count);
      CHECK(quadruple_count({2, 5000, J, K, -1}).count == quadruple_count({2, 5001, K, J, 1}).count);
    }
  }
  CHECK_THROWS_AS(quadruple_count({2, 100, 11, 2, 1}), std::invalid_argument);
  CHECK_THROWS_AS(quadruple_count({2, 100, 2, 2, 0}), std::invalid_argument);
}

TEST_CASE("error scans") {
  const ErrorScan one = error_scan(2, {10}, 1000);
  REQUIRE(one.rows.size() == 1);
  CHECK(one.rows[0].count == oracle::twin_prefix(2, 10)[10]);
  CHECK(one.rows[0].error == doctest::Approx(static_cast<double>(one.rows[0].count) - 10 * cs_constant(2, 1000).value));
  CHECK(std::isnan(one.fitted_slope));

  const ErrorScan many = error_scan(2, {1000, 10000, 100000}, 100000);
  for (const TwinScanRow& r : many.rows) {
    CHECK(r.count <= r.x);
    CHECK(std::abs(r.error) < static_cast<double>(r.x));
    CHECK(r.in_fit == (std::abs(r.error) >= 1.0));
  }
  CHECK_THROWS_AS(error_scan(2, {}, 100), std::invalid_argument);
}

TEST_CASE("exponent table") {
  const ExponentTable t = exponent_table(2);
  CHECK(t.carlitz == Rational(2, 3));
  CHECK(t.improved == Rational(7, 11));
  CHECK(t.aux == Rational(102, 176));
  CHECK(t.aux.str() == "51/88");
  for (unsigned s = 2; s <= 100; ++s) CHECK(exponent_table(s).ordered());
  CHECK_THROWS_AS(exponent_table(1), std::invalid_argument);
  CHECK(Rational(-4, -6) == Rational(2, 3));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
}

TEST_CASE("Q choice") {
  const double x = 1e6, J = 100, K = 10;
  const double formula = std::pow(x, -1.0 / 6) * std::pow(J, 1.0) * std::pow(K, -1.0 / 3) + std::pow(std::log(x), 2);
  CHECK(q_choice(2, x, J, K) == doctest::Approx(formula));
  CHECK(q_choice(2, x, J, K) == doctest::Approx(195.51).epsilon(1e-4));
  for (double xx : {10.0, 1e3, 1e9}) {
    for (double JJ : {2.0, 1e2, 1e4}) {
      const double q = q_choice(3, xx, JJ, 2.0);
      CHECK(q >= std::pow(std::log(xx), 2) * (1 - 1e-12));
      CHECK(q <= xx);
    }
  }
}
