#include "evalues/csv.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <stdexcept>
#include <system_error>

namespace evalues {
namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  if (res.ec != std::errc{}) {
    throw std::runtime_error("failed to format double");
  }
  return std::string(buf, res.ptr);
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  std::string msg = "csv column '" + name + "' not found; columns are:";
  for (const auto& h : header) msg += " '" + h + "'";
  throw std::runtime_error(msg);
}

bool CsvTable::has_column(const std::string& name) const {
  for (const auto& h : header) {
    if (h == name) return true;
  }
  return false;
}

CsvTable read_csv(std::istream& is) {
  CsvTable table;
  std::string line;
  bool first = true;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (first) {
      table.header = split_fields(line);
      first = false;
    } else {
      auto fields = split_fields(line);
      if (fields.size() != table.header.size()) {
        throw std::runtime_error("csv row has " +
                                 std::to_string(fields.size()) +
                                 " fields, header has " +
                                 std::to_string(table.header.size()));
      }
      table.rows.push_back(std::move(fields));
    }
  }
  if (first) throw std::runtime_error("csv input is empty");
  return table;
}

CsvTable read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open csv file: " + path);
  return read_csv(in);
}

double parse_double(const std::string& field) {
  double value = 0.0;
  auto res = std::from_chars(field.data(), field.data() + field.size(), value);
  if (res.ec != std::errc{} || res.ptr != field.data() + field.size()) {
    throw std::runtime_error("cannot parse '" + field + "' as a number");
  }
  return value;
}

long long parse_long(const std::string& field) {
  long long value = 0;
  auto res = std::from_chars(field.data(), field.data() + field.size(), value);
  if (res.ec != std::errc{} || res.ptr != field.data() + field.size()) {
    throw std::runtime_error("cannot parse '" + field + "' as an integer");
  }
  return value;
}

}  // namespace evalues
