#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace aoi {

/// Shortest-safe round-trip text for a double: 17 significant digits, '.'
/// decimal separator, independent of the global locale.
std::string format_number(double v);

/// RFC 4180 style table: one metadata record, one header record, then rows.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  /// Appended to the metadata record as "key=value".
  void meta(std::string_view key, std::string_view value);
  void meta(std::string_view key, double value) { meta(key, format_number(value)); }

  void row(std::vector<std::string> fields);

  std::string str() const;

 private:
  std::vector<std::string> meta_;
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

std::string csv_escape(std::string_view field);

}  // namespace aoi
