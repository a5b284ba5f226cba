#include "mmon/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "mmon/errors.hpp"

namespace mmon {
namespace {

bool needs_quoting(const std::string& cell) {
  return cell.find_first_of(",\"\n") != std::string::npos;
}

void write_cell(const std::string& cell, std::ostream& out) {
  if (!needs_quoting(cell)) {
    out << cell;
    return;
  }
  out << '"';
  for (char c : cell) {
    if (c == '"') out << '"';
    out << c;
  }
  out << '"';
}

void write_line(const std::vector<std::string>& cells, std::ostream& out) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) out << ',';
    write_cell(cells[i], out);
  }
  out << '\n';
}

}  // namespace

std::string format_number(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return buffer;
}

void Table::add_row(std::vector<std::string> cells) {
  if (cells.size() != header.size()) {
    throw ValidationError("row width does not match the table header");
  }
  rows.push_back(std::move(cells));
}

void write_csv(const Table& table, std::ostream& out) {
  write_line(table.header, out);
  for (const auto& row : table.rows) write_line(row, out);
}

void write_csv_file(const Table& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ValidationError("cannot open output file: " + path);
  }
  write_csv(table, out);
  if (!out) {
    throw ValidationError("failed writing output file: " + path);
  }
}

std::string to_csv(const Table& table) {
  std::ostringstream out;
  write_csv(table, out);
  return out.str();
}

}  // namespace mmon
