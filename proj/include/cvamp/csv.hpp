#pragma once

#include <string>
#include <vector>

namespace cvamp {

/// Locale-independent number formatting: '.' decimal separator, 6
/// significant digits.
std::string format_number(double value);

/// Accumulates CSV rows (LF line endings) and writes the whole file at once
/// via a temporary, so a failed run leaves no partial output.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);

  void add_row(const std::vector<std::string>& cells);
  void add_row(const std::vector<double>& values);

  std::string str() const;
  void write(const std::string& path) const;

 private:
  std::vector<std::string> lines_;
};

}  // namespace cvamp
