// twins.hpp
// Consecutive s-free numbers: exact twin counts, the density constant
// C_s = prod_p (1 - 2/p^s), the Moebius decomposition through
// N(x, j, k), the dyadic quadruple count and its Hensel-lifting
// machinery, error scans and the exponent table.

#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "powersieve/arithmetic.hpp"

namespace powersieve {

// ---------------------------------------------------------------------
// Density constant
// ---------------------------------------------------------------------

struct CsConstant {
  unsigned s = 2;
  u64 plimit = 2;
  double value = 0.0;     // prod_{p <= plimit} (1 - 2/p^s)
  double log_tail = 0.0;  // >= |log C_s - log value|, from sum_{p > plimit} 3/p^s
  // Absolute error bound on value: value * (e^log_tail - 1).
  double abs_error() const;
};

CsConstant cs_constant(unsigned s, u64 plimit);

// sum_{n <= N} mu(n) d(n) / n^s from Moebius and divisor sieves; an
// independent route to C_s.
double cs_dirichlet_partial(unsigned s, u64 N);
// Bound on sum_{n > N} d(n) / n^s by partial summation with
// sum_{n <= t} d(n) <= t (log t + 1).
double cs_dirichlet_tail(unsigned s, u64 N);

struct ConstantCheck {
  CsConstant euler;
  u64 dirichlet_terms = 0;
  double dirichlet_value = 0.0;
  double dirichlet_tail = 0.0;
  double difference = 0.0;  // |euler.value - dirichlet_value|
  double allowed = 0.0;     // euler.abs_error() + dirichlet_tail
  bool consistent() const { return difference <= allowed; }
};

ConstantCheck cs_consistency(unsigned s, u64 plimit, u64 dirichlet_terms);

// ---------------------------------------------------------------------
// Twin counts
// ---------------------------------------------------------------------

// #{n <= x : n and n + 1 both s-free}, by segmented sieve.
u64 count_twin_sfree(unsigned s, u64 x, std::size_t segment_size = kDefaultSegmentSize);

// Counts at every x in xs (ascending) from a single sieve pass.
std::vector<u64> twin_prefix_counts(unsigned s, const std::vector<u64>& xs,
                                    std::size_t segment_size = kDefaultSegmentSize);

// #{n <= x : j^s | n, k^s | n + 1}, by CRT stepping.
u64 count_N(unsigned s, u64 x, u64 j, u64 k);

// sum_{j <= x^(1/s), k <= (x+1)^(1/s)} mu(j) mu(k) N(x, j, k).
i64 twin_count_by_decomposition(unsigned s, u64 x);

// ---------------------------------------------------------------------
// Hensel counting and quadruple counts
// ---------------------------------------------------------------------

// Residues j mod k^s with j^s u = -sign (mod k^s), ascending. gcd(u, k) = 1.
std::vector<u64> hensel_solutions(unsigned s, u64 u, u64 k, int sign);
u64 hensel_count(unsigned s, u64 u, u64 k, int sign);

struct QuadrupleQuery {
  unsigned s = 2;
  u64 x = 1;
  u64 J = 1;
  u64 K = 1;
  int sign = 1;
};

struct QuadrupleCount {
  u64 count = 0;
  double bound = 0.0;  // x (J^-s K + (JK)^(1-s)) (log x)^(s-1)
  double ratio() const { return bound > 0 ? static_cast<double>(count) / bound : 0.0; }
};

// #{(j, k, u, v) : J < j <= 2J, K < k <= 2K, j^s u + sign = k^s v <= x}.
QuadrupleCount quadruple_count(const QuadrupleQuery& q);
double quadruple_bound(const QuadrupleQuery& q);

// #{(j, k, v) : J < j <= 2J, K < k <= 2K, j^s u + sign = k^s v <= x} for fixed u.
u64 count_N_u(unsigned s, u64 x, u64 u, u64 J, u64 K, int sign);

// ---------------------------------------------------------------------
// Error scans and exponents
// ---------------------------------------------------------------------

struct TwinScanRow {
  unsigned s = 2;
  u64 x = 0;
  u64 count = 0;
  double main = 0.0;             // C_s x
  double error = 0.0;            // count - main
  double main_uncertainty = 0.0; // x * C_s truncation error
  bool in_fit = false;           // |error| >= 1
};

struct ErrorScan {
  std::vector<TwinScanRow> rows;
  double fitted_slope = 0.0;  // NaN when fewer than two rows are in the fit
};

ErrorScan error_scan(unsigned s, const std::vector<u64>& xs, u64 plimit);

struct Rational {
  i64 num = 0;
  i64 den = 1;

  Rational() = default;
  Rational(i64 n, i64 d);
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;
  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);
};

struct ExponentTable {
  unsigned s = 2;
  Rational carlitz;   // 2/(s+1)
  Rational improved;  // 14/(7s+8)
  Rational aux;       // (39s+24)/(21s^2+38s+16)
  bool ordered() const { return improved < carlitz && aux < improved; }
};

ExponentTable exponent_table(unsigned s);

// x^(-1/6) J^(s/2) K^(-(s-1)/3) + (log x)^2, clamped to [(log x)^2, x].
double q_choice(unsigned s, double x, double J, double K);

}  // namespace powersieve
