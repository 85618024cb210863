#pragma once

#include <string>
#include <vector>

namespace lobbying {

/// %.9g, with "inf", "-inf" and "nan" spelled out and negative zero printed as 0.
std::string format_number(double x);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row) { rows.push_back(std::move(row)); }
  std::string str() const;
};

/// Writes through a temporary file in the same directory and renames it into
/// place, so readers never see a partial file.
void write_atomic(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

}  // namespace lobbying
