#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace wgf {

// CSV with one leading '#' comment line carrying a JSON echo of the run
// configuration (the only place a timestamp may appear); the body below it is
// deterministic: fixed header, '.' decimal point, 17 significant digits.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::string& metadata_json,
            const std::vector<std::string>& columns);

  void row(const std::vector<double>& values);
  void raw_row(const std::string& line);  // pre-formatted (mixed-type rows)
  void comment(const std::string& text);  // '#'-prefixed footer line

  static std::string format(double v);

 private:
  std::ofstream out_;
  std::size_t n_columns_;
};

}  // namespace wgf
