#pragma once
#include <string>
#include <vector>

#include "otoc/otoc.hpp"

namespace otoc {

// 17 significant digits, '.' decimal separator, locale-independent.
std::string format_number(double x);

// Accepts decimal literals or rational-of-pi literals: "pi", "pi/28",
// "3pi/18", "0.25pi". Whitespace-free. Throws ConfigError on junk.
double parse_angle(const std::string& text);

struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  // Comma-separated, LF endings, mandatory header row.
  void write(const std::string& path) const;
  std::string to_string() const;
};

Csv series_csv(const OtocSeries& series);

}  // namespace otoc
