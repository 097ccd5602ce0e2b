#include "powersieve/report.hpp"

#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <iostream>

#include "json.hpp"

namespace powersieve {

namespace {

std::string sign_str(int sign) { return sign > 0 ? "+1" : "-1"; }

std::string json_value(const Value& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, bool>) {
          return x ? "true" : "false";
        } else if constexpr (std::is_same_v<T, double>) {
          return std::isfinite(x) ? format_double(x) : "null";
        } else if constexpr (std::is_same_v<T, std::string>) {
          return nlohmann::json(x).dump();
        } else {
          return std::to_string(x);
        }
      },
      v);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_value(const Value& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, bool>) {
          return x ? "true" : "false";
        } else if constexpr (std::is_same_v<T, double>) {
          return format_double(x);
        } else if constexpr (std::is_same_v<T, std::string>) {
          return csv_escape(x);
        } else {
          return std::to_string(x);
        }
      },
      v);
}

void check_homogeneous(const std::vector<Row>& rows) {
  for (const Row& row : rows) {
    if (row.type != rows.front().type || row.fields.size() != rows.front().fields.size()) {
      throw UsageError("emit_report: mixed row types (" + rows.front().type + ", " + row.type + ")");
    }
    for (std::size_t i = 0; i < row.fields.size(); ++i) {
      if (row.fields[i].first != rows.front().fields[i].first) {
        throw UsageError("emit_report: rows disagree on field '" + row.fields[i].first + "'");
      }
    }
  }
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", v);
}

void emit_report(const std::vector<Row>& rows, Format format, std::ostream& out,
                 const std::vector<std::string>& columns) {
  check_homogeneous(rows);
  if (format == Format::csv) {
    std::vector<std::string> header = columns;
    if (!rows.empty()) {
      header.clear();
      for (const auto& [key, value] : rows.front().fields) header.push_back(key);
    }
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << csv_escape(header[i]);
    out << '\n';
    for (const Row& row : rows) {
      for (std::size_t i = 0; i < row.fields.size(); ++i) out << (i ? "," : "") << csv_value(row.fields[i].second);
      out << '\n';
    }
  } else {
    if (rows.empty()) {
      out << "[]\n";
    } else {
      out << "[\n";
      for (std::size_t r = 0; r < rows.size(); ++r) {
        out << "  {";
        for (std::size_t i = 0; i < rows[r].fields.size(); ++i) {
          const auto& [key, value] = rows[r].fields[i];
          out << (i ? ", " : "") << nlohmann::json(key).dump() << ": " << json_value(value);
        }
        out << (r + 1 < rows.size() ? "},\n" : "}\n");
      }
      out << "]\n";
    }
  }
  if (!out) throw IoError("emit_report: write failed");
}

void emit_report(const std::vector<Row>& rows, Format format, const std::string& path,
                 const std::vector<std::string>& columns) {
  if (path == "-" || path.empty()) {
    emit_report(rows, format, std::cout, columns);
    std::cout.flush();
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  emit_report(rows, format, file, columns);
  file.close();
  if (!file) throw IoError("failed writing '" + path + "'");
}

Row to_row(const TwinScanRow& r) {
  return {"TwinScanRow",
          {{"s", std::uint64_t{r.s}},
           {"x", r.x},
           {"count", r.count},
           {"main", r.main},
           {"error", r.error},
           {"main_uncertainty", r.main_uncertainty},
           {"in_fit", r.in_fit}}};
}

Row to_row(const SieveCheckRow& r) {
  return {"SieveCheckRow",
          {{"s", std::uint64_t{r.s}},
           {"x", r.x},
           {"qlo", r.qlo},
           {"qhi", r.qhi},
           {"P", r.P},
           {"density_ratio", r.density_ratio},
           {"lhs", r.lhs},
           {"term1", r.term1},
           {"term2", r.term2},
           {"rhs_total", r.rhs_total},
           {"lhs_over_rhs", r.lhs_over_rhs},
           {"support_bound_ok", r.support_bound_ok},
           {"sigma", r.sigma},
           {"expansion_residual", r.expansion_residual},
           {"passed", r.passed}}};
}

Row to_row(const BoundCheckRow& r) {
  return {"BoundCheckRow",
          {{"check", r.check},
           {"s", std::uint64_t{r.s}},
           {"params", r.params},
           {"cases", r.cases},
           {"violations", r.violations},
           {"max_ratio", r.max_ratio},
           {"passed", r.passed}}};
}

Row to_row(const ConstantRow& r) {
  const ConstantCheck& c = r.check;
  return {"ConstantRow",
          {{"s", std::uint64_t{c.euler.s}},
           {"plimit", c.euler.plimit},
           {"value", c.euler.value},
           {"log_tail", c.euler.log_tail},
           {"abs_error", c.euler.abs_error()},
           {"dirichlet_terms", c.dirichlet_terms},
           {"dirichlet_value", c.dirichlet_value},
           {"dirichlet_tail", c.dirichlet_tail},
           {"difference", c.difference},
           {"consistent", c.consistent()}}};
}

Row to_row(const ExponentRow& r) {
  const ExponentTable& t = r.table;
  return {"ExponentRow",
          {{"s", std::uint64_t{t.s}},
           {"carlitz", t.carlitz.str()},
           {"new", t.improved.str()},
           {"aux", t.aux.str()},
           {"carlitz_value", t.carlitz.value()},
           {"new_value", t.improved.value()},
           {"aux_value", t.aux.value()},
           {"ordered", t.ordered()}}};
}

Row to_row(const FactorizationRow& r) {
  const ExpSumParams& p = r.params;
  const FactorizationCheck& c = r.check;
  return {"FactorizationRow",
          {{"u", p.u},
           {"p", p.p},
           {"q", p.q},
           {"s", std::uint64_t{p.s}},
           {"gamma", std::int64_t{p.gamma}},
           {"delta", std::int64_t{p.delta}},
           {"sign", sign_str(p.sign)},
           {"c", c.cd.c},
           {"d", c.cd.d},
           {"full_re", c.full.real()},
           {"full_im", c.full.imag()},
           {"product_re", c.product.real()},
           {"product_im", c.product.imag()},
           {"residual", c.residual},
           {"passed", c.passed()}}};
}

}  // namespace powersieve
