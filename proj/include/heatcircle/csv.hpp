#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "heatcircle/errors.hpp"
#include "heatcircle/grid_io.hpp"

namespace heatcircle {

using CsvCell = std::variant<std::int64_t, double, std::string>;

/// Fixed-schema table; every row must have one cell per column.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void add_row(std::vector<CsvCell> row) {
    if (row.size() != columns_.size()) {
      throw LengthMismatch("CSV row has " + std::to_string(row.size()) + " cells, schema has " +
                           std::to_string(columns_.size()));
    }
    rows_.push_back(std::move(row));
  }

  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<CsvCell>>& rows() const { return rows_; }

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<CsvCell>> rows_;
};

inline std::string format_cell(const CsvCell& c) {
  struct Visitor {
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_number(v); }
    std::string operator()(const std::string& v) const { return v; }
  };
  return std::visit(Visitor{}, c);
}

inline std::string csv_text(const CsvTable& t) {
  std::ostringstream out;
  auto emit = [&](const auto& cells, auto&& fmt) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) out << ',';
      out << fmt(cells[i]);
    }
    out << '\n';
  };
  emit(t.columns(), [](const std::string& s) { return s; });
  for (const auto& row : t.rows()) emit(row, format_cell);
  return out.str();
}

inline void emit_csv(const std::string& path, const CsvTable& t) {
  write_text_file(path, csv_text(t));
}

}  // namespace heatcircle
