#pragma once

#include <fstream>
#include <initializer_list>
#include <string>
#include <vector>

#include "wonham/model.hpp"

namespace wonham {

/// git-describe string baked in at build time.
std::string version_string();

/// "# config=<json> version=<version>"
std::string header_comment(const ExperimentConfig& config);

/// Shortest round-trip decimal form, identical on every platform using IEEE doubles.
std::string format_number(double v);

/// CSV file with a leading config/version comment line and a fixed column list.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const ExperimentConfig& config,
            std::vector<std::string> columns);

  void row(std::initializer_list<double> values);
  /// Pre-formatted cells, for mixed text/number rows.
  void row_cells(const std::vector<std::string>& cells);
  void close();

 private:
  std::string path_;
  std::ofstream out_;
  std::size_t width_;
};

}  // namespace wonham
