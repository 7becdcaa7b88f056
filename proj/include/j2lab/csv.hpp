#pragma once

#include <initializer_list>
#include <iosfwd>
#include <string>
#include <vector>

namespace j2lab {

// 17 significant digits: enough to round-trip every double exactly.
std::string format_number(double x);

class CsvWriter {
 public:
  CsvWriter(std::ostream& os, const std::vector<std::string>& header);
  void row(std::initializer_list<double> values);
  void row(const std::vector<double>& values);

 private:
  std::ostream& os_;
  std::size_t columns_;
};

}  // namespace j2lab
