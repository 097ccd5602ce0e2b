// verify.hpp
// Invariant suites. Each suite compares a library routine against an
// oracle or checks a stated bound over a fixed grid, and condenses the
// outcome into one BoundCheckRow. Rows carry no timings, so a suite's
// output depends only on its arguments.

#pragma once

#include <cstdint>
#include <vector>

#include "powersieve/expsums.hpp"
#include "powersieve/report.hpp"

namespace powersieve::verify {

inline constexpr u64 kDefaultSeed = 42;

// Admissible tuples with upq <= cap drawn from mt19937_64(seed); only raw
// generator output and modular reduction are used, so the sequence is the
// same on every platform.
std::vector<ExpSumParams> random_tuples(u64 seed, std::size_t count, u64 cap = kFullSumModulusCap);

// arithmetic
BoundCheckRow mobius_agreement(u64 N);
BoundCheckRow sfree_indicator(unsigned s, u64 N);
BoundCheckRow squarefull_split(u64 N);
BoundCheckRow squarefull_count(u64 Z);
BoundCheckRow divisor_power(unsigned s, u64 N);

// characters
BoundCheckRow character_properties(unsigned s, u64 pmax);
BoundCheckRow gauss_sums(unsigned s, u64 pmax);
BoundCheckRow pair_sum_period(unsigned s);

// sieve
BoundCheckRow remark_a(const std::vector<u64>& primes, unsigned s);
BoundCheckRow sigma_expansion();
BoundCheckRow inner_count(u64 mmax);
BoundCheckRow interval_sieve(unsigned s, u64 x, u64 Q);
BoundCheckRow twin_weight_micro(unsigned s, u64 limit);

// exponential sums
BoundCheckRow s2_bound(unsigned s, u64 pmax);
BoundCheckRow s2_elimination(unsigned s, u64 pmax);
BoundCheckRow chalk_smith(u64 p, unsigned s, int sign);
BoundCheckRow s1_split(unsigned s, u64 pmax);
BoundCheckRow factorization_grid();
BoundCheckRow factorization_random(u64 seed, std::size_t count);
BoundCheckRow crt_gcd_transfer(u64 seed, std::size_t count);
BoundCheckRow completion_sums(u64 seed, std::size_t draws);

// twins
BoundCheckRow twin_oracle(unsigned s, u64 X);
BoundCheckRow twin_decomposition(unsigned s, u64 X);
BoundCheckRow constant_consistency(unsigned s, u64 plimit);
BoundCheckRow error_envelope(unsigned s, const std::vector<u64>& xs, u64 plimit);
BoundCheckRow count_N_envelope(unsigned s, u64 x, u64 jkmax);
BoundCheckRow hensel_oracle(unsigned s, u64 limit);
BoundCheckRow hensel_bound(unsigned s, u64 limit);
BoundCheckRow quadruple_envelope(unsigned s, const std::vector<u64>& xs, const std::vector<u64>& boxes);
BoundCheckRow quadruple_swap(unsigned s, u64 x, const std::vector<u64>& boxes);
BoundCheckRow exponent_order(unsigned smax);

// Every suite at acceptance scale, in a fixed order.
std::vector<BoundCheckRow> all(u64 seed);

}  // namespace powersieve::verify
