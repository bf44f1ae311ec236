#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace evalues {

/// Shortest decimal string that round-trips the exact double, via
/// std::to_chars. Keeps CSV output byte-identical across reruns.
std::string format_double(double value);

/// In-memory CSV contents: a header row and the data rows, all as strings.
/// Fields are comma-separated with no quoting; none of the emitted schemas
/// ever contain commas inside fields.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Index of `name` in the header. Throws std::runtime_error naming the
  /// missing column and listing the columns present.
  std::size_t column(const std::string& name) const;
  bool has_column(const std::string& name) const;
};

CsvTable read_csv(std::istream& is);
CsvTable read_csv_file(const std::string& path);

double parse_double(const std::string& field);
long long parse_long(const std::string& field);

}  // namespace evalues
