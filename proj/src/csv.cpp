#include "wgf/csv.hpp"

#include <cstdio>
#include <stdexcept>

namespace wgf {

CsvWriter::CsvWriter(const std::string& path, const std::string& metadata_json,
                     const std::vector<std::string>& columns)
    : out_(path), n_columns_(columns.size()) {
  if (!out_) throw std::runtime_error("CsvWriter: cannot open " + path);
  out_ << "# " << metadata_json << "\n";
  for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
  out_ << "\n";
}

std::string CsvWriter::format(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != n_columns_) throw std::invalid_argument("CsvWriter: wrong column count");
  for (std::size_t i = 0; i < values.size(); ++i)
    out_ << (i ? "," : "") << format(values[i]);
  out_ << "\n";
}

void CsvWriter::raw_row(const std::string& line) { out_ << line << "\n"; }

void CsvWriter::comment(const std::string& text) { out_ << "# " << text << "\n"; }

}  // namespace wgf
