#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mmon {

/// Canonical numeric cell rendering: 12 significant digits, shortest
/// form ("%.12g").  Used everywhere so CSV output is byte-stable.
std::string format_number(double value);

/// A header plus rows of pre-rendered cells.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Appends a row; its width must match the header.
  void add_row(std::vector<std::string> cells);
};

/// Comma-separated output with a header row and Unix newlines.  Cells
/// containing commas, quotes, or newlines are quoted.
void write_csv(const Table& table, std::ostream& out);

/// write_csv into a freshly created file; throws ValidationError when the
/// path cannot be opened.
void write_csv_file(const Table& table, const std::string& path);

/// write_csv into a string.
std::string to_csv(const Table& table);

}  // namespace mmon
