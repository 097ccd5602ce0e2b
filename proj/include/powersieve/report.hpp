// report.hpp
// Typed report rows and their CSV / JSON serialization.
//
// CSV: header of field names, one line per row, '.' decimal separator.
// JSON: array of objects with identical keys. Doubles use 17 significant
// digits in both formats; output never depends on the locale.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "powersieve/expsums.hpp"
#include "powersieve/twins.hpp"

namespace powersieve {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { json, csv };

using Value = std::variant<bool, std::int64_t, std::uint64_t, double, std::string>;

struct Row {
  std::string type;
  std::vector<std::pair<std::string, Value>> fields;
};

std::string format_double(double v);

// Rows must share type and keys, else UsageError. For an empty list the
// CSV header comes from `columns`.
void emit_report(const std::vector<Row>& rows, Format format, std::ostream& out,
                 const std::vector<std::string>& columns = {});
// path "-" writes to stdout; failures raise IoError.
void emit_report(const std::vector<Row>& rows, Format format, const std::string& path,
                 const std::vector<std::string>& columns = {});

struct SieveCheckRow {
  unsigned s = 2;
  u64 x = 0;
  u64 qlo = 0;
  u64 qhi = 0;
  u64 P = 0;
  double density_ratio = 0.0;
  double lhs = 0.0;
  double term1 = 0.0;
  double term2 = 0.0;
  double rhs_total = 0.0;
  double lhs_over_rhs = 0.0;
  bool support_bound_ok = false;
  double sigma = 0.0;
  double expansion_residual = 0.0;
  bool passed = false;
};

struct BoundCheckRow {
  std::string check;
  unsigned s = 0;
  std::string params;
  u64 cases = 0;
  u64 violations = 0;
  double max_ratio = 0.0;
  bool passed = false;
};

struct ConstantRow {
  ConstantCheck check;
};

struct ExponentRow {
  ExponentTable table;
};

struct FactorizationRow {
  ExpSumParams params;
  FactorizationCheck check;
};

Row to_row(const TwinScanRow& r);
Row to_row(const SieveCheckRow& r);
Row to_row(const BoundCheckRow& r);
Row to_row(const ConstantRow& r);
Row to_row(const ExponentRow& r);
Row to_row(const FactorizationRow& r);

template <typename T>
std::vector<Row> to_rows(const std::vector<T>& items) {
  std::vector<Row> out;
  out.reserve(items.size());
  for (const T& item : items) out.push_back(to_row(item));
  return out;
}

template <typename T>
std::vector<std::string> columns_of() {
  std::vector<std::string> out;
  for (const auto& [key, value] : to_row(T{}).fields) out.push_back(key);
  return out;
}

}  // namespace powersieve
