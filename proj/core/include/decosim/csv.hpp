#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace decosim {

/// Fixed-format CSV emitter: comma separator, '.' decimal point, '\n' line
/// ends, six-decimal floats. Leading "# key=value" comment lines, then
/// exactly one header row, then data rows — so identical inputs always
/// produce byte-identical files.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  /// "# <text>"; only valid before the header.
  void comment(const std::string& text);
  void header(const std::vector<std::string>& columns);
  void row(const std::vector<std::string>& cells);

  static std::string num(double value);
  static std::string num(std::int64_t value);
  static std::string num(std::uint64_t value);
  static std::string num(int value) { return num(static_cast<std::int64_t>(value)); }

 private:
  void line(const std::vector<std::string>& cells);

  std::ostream& out_;
  bool header_written_ = false;
};

}  // namespace decosim
