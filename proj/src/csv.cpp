#include "tropca/csv.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include "tropca/phylo.hpp"

namespace tropca {

std::string format_shortest(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

CsvTable read_csv(std::istream& is) {
  CsvTable t;
  std::string line;
  if (!std::getline(is, line)) throw CsvError(0, 0, "missing header");
  t.columns = split_line(line);
  if (t.columns.empty() || t.columns[0].empty())
    throw CsvError(0, 0, "empty header");
  int rowno = 0;
  while (std::getline(is, line)) {
    ++rowno;
    if (line.empty()) continue;
    const std::vector<std::string> cells = split_line(line);
    if (cells.size() != t.columns.size())
      throw CsvError(rowno, static_cast<int>(cells.size()),
                     "expected " + std::to_string(t.columns.size()) + " cells");
    std::vector<double> row(cells.size());
    for (size_t c = 0; c < cells.size(); ++c) {
      const std::string& cell = cells[c];
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (ec != std::errc() || ptr != cell.data() + cell.size())
        throw CsvError(rowno, static_cast<int>(c), "bad number '" + cell + "'");
      row[c] = v;
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

void write_csv(std::ostream& os, const CsvTable& table) {
  for (size_t c = 0; c < table.columns.size(); ++c) {
    if (c > 0) os << ',';
    os << table.columns[c];
  }
  os << '\n';
  for (const std::vector<double>& row : table.rows) {
    for (size_t c = 0; c < row.size(); ++c) {
      if (c > 0) os << ',';
      os << format_shortest(row[c]);
    }
    os << '\n';
  }
}

std::vector<std::string> pair_columns(std::span<const std::string> leaf_order) {
  const int m = static_cast<int>(leaf_order.size());
  const PairIndexer pairs(m);
  std::vector<std::string> out;
  out.reserve(static_cast<size_t>(pairs.dim()));
  for (int idx = 0; idx < pairs.dim(); ++idx) {
    const auto [i, j] = pairs.pair(idx);
    out.push_back("pair:" + leaf_order[static_cast<size_t>(i)] + "-" +
                  leaf_order[static_cast<size_t>(j)]);
  }
  return out;
}

std::vector<TropPoint> table_points(const CsvTable& table) {
  std::vector<TropPoint> out;
  out.reserve(table.rows.size());
  for (const std::vector<double>& row : table.rows) out.emplace_back(row);
  return out;
}

CsvTable points_table(std::span<const TropPoint> pts,
                      std::span<const std::string> columns) {
  CsvTable t;
  t.columns.assign(columns.begin(), columns.end());
  for (const TropPoint& p : pts) t.rows.push_back(p.coords());
  return t;
}

}  // namespace tropca
