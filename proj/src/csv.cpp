#include "wonham/csv.hpp"

#include <charconv>
#include <cmath>

#include "wonham/errors.hpp"

#ifndef WONHAM_VERSION
#define WONHAM_VERSION "unknown"
#endif

namespace wonham {

std::string version_string() { return WONHAM_VERSION; }

std::string header_comment(const ExperimentConfig& config) {
  return "# config=" + config.to_json() + " version=" + version_string();
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(const std::string& path, const ExperimentConfig& config,
                     std::vector<std::string> columns)
    : path_(path), out_(path, std::ios::binary | std::ios::trunc), width_(columns.size()) {
  if (!out_) throw IoError("cannot open " + path + " for writing");
  out_ << header_comment(config) << '\n';
  for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
  out_ << '\n';
}

void CsvWriter::row(std::initializer_list<double> values) {
  if (values.size() != width_) throw std::logic_error("csv row width mismatch in " + path_);
  bool first = true;
  for (double v : values) {
    if (!first) out_ << ',';
    out_ << format_number(v);
    first = false;
  }
  out_ << '\n';
}

void CsvWriter::row_cells(const std::vector<std::string>& cells) {
  if (cells.size() != width_) throw std::logic_error("csv row width mismatch in " + path_);
  for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
  out_ << '\n';
}

void CsvWriter::close() {
  out_.flush();
  if (!out_) throw IoError("write error on " + path_);
  out_.close();
}

}  // namespace wonham
