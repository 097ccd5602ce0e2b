// cli.hpp
// Command-line front end: one subcommand per report type.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "powersieve/arithmetic.hpp"
#include "powersieve/report.hpp"

namespace powersieve::cli {

enum class Command { twins, constant, sieve_check, expsum_check, hensel_check, exponents, verify_all };

enum class ExpsumSuite { lemma_ii, chalk_smith, factorization };

struct RunConfig {
  Command command = Command::verify_all;
  unsigned s = 2;
  u64 x = 1000000;
  std::vector<u64> xs;  // overrides x for twins
  u64 plimit = 1000000;
  u64 qlo = 20;
  u64 qhi = 40;
  u64 seed = 42;
  std::size_t tuples = 200;
  ExpsumSuite suite = ExpsumSuite::lemma_ii;
  std::string out = "-";
  Format format = Format::json;
  unsigned threads = 0;  // 0 keeps POWERSIEVE_THREADS / auto
};

// Writes the report; 0 if every check passed, 1 on a failed check,
// 2 on bad parameters or an unwritable output.
int run(const RunConfig& config);

// Parses argv and runs. Usage errors exit 2; --help exits 0.
int main(int argc, char** argv);

}  // namespace powersieve::cli
