#include "kpo/csv.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace kpo {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
  return out;
}

void write_meta(std::ostream& out, const ParamList& meta) {
  for (const auto& [k, v] : meta) out << "# " << k << '=' << v << '\n';
}

double parse_cell(const std::string& cell, std::size_t line) {
  if (cell == "nan") return std::nan("");
  char* end = nullptr;
  const double v = std::strtod(cell.c_str(), &end);
  if (cell.empty() || end != cell.c_str() + cell.size())
    throw InvalidArgument("csv line " + std::to_string(line) + ": '" + cell + "' is not a number");
  return v;
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(std::ostream& out, const SeriesTable& table) {
  write_meta(out, table.meta);
  for (std::size_t k = 0; k < table.names.size(); ++k) out << (k ? "," : "") << table.names[k];
  out << '\n';
  for (std::size_t i = 0; i < table.rows(); ++i) {
    for (std::size_t k = 0; k < table.columns.size(); ++k) out << (k ? "," : "") << format_double(table.columns[k][i]);
    out << '\n';
  }
}

void write_csv(const std::string& path, const SeriesTable& table) {
  auto out = open_out(path);
  write_csv(out, table);
}

SeriesTable read_csv(std::istream& in) {
  SeriesTable table;
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!header && line.rfind("# ", 0) == 0) {
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw InvalidArgument("csv line " + std::to_string(lineno) + ": bad metadata");
      table.meta.push_back({line.substr(2, eq - 2), line.substr(eq + 1)});
      continue;
    }
    if (!header) {
      for (auto& name : split_row(line)) table.add_column(name, {});
      header = true;
      continue;
    }
    if (line.empty()) continue;
    const auto cells = split_row(line);
    if (cells.size() != table.columns.size())
      throw InvalidArgument("csv line " + std::to_string(lineno) + ": expected " +
                            std::to_string(table.columns.size()) + " cells");
    for (std::size_t k = 0; k < cells.size(); ++k) table.columns[k].push_back(parse_cell(cells[k], lineno));
  }
  if (!header) throw InvalidArgument("csv: missing header row");
  return table;
}

SeriesTable read_csv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read '" + path + "'");
  return read_csv(in);
}

void write_wigner_csv(std::ostream& out, const WignerGrid& grid, const ParamList& meta) {
  write_meta(out, meta);
  out << "x,y,w\n";
  for (Eigen::Index ix = 0; ix < grid.x_axis.size(); ++ix)
    for (Eigen::Index iy = 0; iy < grid.y_axis.size(); ++iy)
      out << format_double(grid.x_axis(ix)) << ',' << format_double(grid.y_axis(iy)) << ','
          << format_double(grid.values(ix, iy)) << '\n';
}

void write_wigner_csv(const std::string& path, const WignerGrid& grid, const ParamList& meta) {
  auto out = open_out(path);
  write_wigner_csv(out, grid, meta);
}

}  // namespace kpo
