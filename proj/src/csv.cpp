#include "aoi/csv.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace aoi {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  if (res.ec != std::errc{}) throw std::runtime_error("format_number: conversion failed");
  return {buf, res.ptr};
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void CsvTable::meta(std::string_view key, std::string_view value) {
  std::string kv(key);
  kv += '=';
  kv += value;
  meta_.push_back(std::move(kv));
}

void CsvTable::row(std::vector<std::string> fields) {
  if (fields.size() != header_.size()) throw std::invalid_argument("csv row width differs from header");
  rows_.push_back(std::move(fields));
}

std::string CsvTable::str() const {
  std::string out;
  auto record = [&](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out += ',';
      out += csv_escape(fields[i]);
    }
    out += "\r\n";
  };
  std::vector<std::string> m{"#meta"};
  m.insert(m.end(), meta_.begin(), meta_.end());
  record(m);
  record(header_);
  for (const auto& r : rows_) record(r);
  return out;
}

}  // namespace aoi
