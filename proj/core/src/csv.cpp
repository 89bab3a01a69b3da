#include "decosim/csv.hpp"

#include <cstdio>

#include "decosim/error.hpp"

namespace decosim {

void CsvWriter::comment(const std::string& text) {
  if (header_written_) {
    throw SimError(ErrorCode::invalid_argument, "csv: comments must precede the header");
  }
  out_ << "# " << text << "\n";
}

void CsvWriter::header(const std::vector<std::string>& columns) {
  if (header_written_) {
    throw SimError(ErrorCode::invalid_argument, "csv: header already written");
  }
  header_written_ = true;
  line(columns);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (!header_written_) {
    throw SimError(ErrorCode::invalid_argument, "csv: header must come first");
  }
  line(cells);
}

void CsvWriter::line(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) out_ << ',';
    out_ << cells[i];
  }
  out_ << '\n';
}

std::string CsvWriter::num(double value) {
  value += 0.0;  // normalize -0
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", value);
  return buf;
}

std::string CsvWriter::num(std::int64_t value) {
  return std::to_string(value);
}

std::string CsvWriter::num(std::uint64_t value) {
  return std::to_string(value);
}

}  // namespace decosim
