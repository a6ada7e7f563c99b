#ifndef TROPCA_CSV_HPP
#define TROPCA_CSV_HPP

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "tropca/trop_core.hpp"

namespace tropca {

/// Header row of column names plus one numeric row per record. Numbers are
/// written in shortest round-trip decimal form, so read(write(x)) == x.
struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct CsvError : std::runtime_error {
  CsvError(int row, int col, const std::string& what)
      : std::runtime_error("csv error at row " + std::to_string(row) +
                           ", column " + std::to_string(col) + ": " + what),
        row(row), col(col) {}
  int row, col;
};

CsvTable read_csv(std::istream& is);
void write_csv(std::ostream& os, const CsvTable& table);

std::string format_shortest(double v);

/// Column names "pair:a-b", ... in lexicographic pair order.
std::vector<std::string> pair_columns(std::span<const std::string> leaf_order);

std::vector<TropPoint> table_points(const CsvTable& table);
CsvTable points_table(std::span<const TropPoint> pts,
                      std::span<const std::string> columns);

}  // namespace tropca

#endif  // TROPCA_CSV_HPP
