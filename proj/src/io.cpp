#include "otoc/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace otoc {

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

double parse_decimal(const std::string& s) {
  if (s.empty()) throw ConfigError("parse_angle: empty number in '" + s + "'");
  size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw ConfigError("parse_angle: cannot parse '" + s + "'");
  }
  if (pos != s.size())
    throw ConfigError("parse_angle: trailing characters in '" + s + "'");
  return v;
}

}  // namespace

double parse_angle(const std::string& text) {
  if (text.empty()) throw ConfigError("parse_angle: empty string");
  const size_t at = text.find("pi");
  if (at == std::string::npos) return parse_decimal(text);
  const std::string pre = text.substr(0, at);
  const std::string post = text.substr(at + 2);
  double coef = pre.empty() ? 1.0 : (pre == "-" ? -1.0 : parse_decimal(pre));
  double den = 1.0;
  if (!post.empty()) {
    if (post[0] != '/')
      throw ConfigError("parse_angle: expected '/' after pi in '" + text + "'");
    den = parse_decimal(post.substr(1));
    if (den == 0) throw ConfigError("parse_angle: division by zero");
  }
  return coef * M_PI / den;
}

std::string Csv::to_string() const {
  std::string out;
  for (size_t i = 0; i < header.size(); ++i) {
    if (i) out += ',';
    out += header[i];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += row[i];
    }
    out += '\n';
  }
  return out;
}

void Csv::write(const std::string& path) const {
  if (header.empty()) throw ConfigError("csv: header row is mandatory");
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("csv: cannot open '" + path + "' for writing");
  f << to_string();
}

Csv series_csv(const OtocSeries& series) {
  Csv csv;
  csv.header = {"n", "re_f", "im_f", "c", "c2", "c4"};
  const size_t len = series.n.size();
  for (size_t i = 0; i < len; ++i) {
    std::vector<std::string> row(6);
    row[0] = std::to_string(series.n[i]);
    if (i < series.f.size()) {
      row[1] = format_number(series.f[i].real());
      row[2] = format_number(series.f[i].imag());
    }
    if (i < series.c.size()) row[3] = format_number(series.c[i]);
    if (i < series.c2.size()) row[4] = format_number(series.c2[i]);
    if (i < series.c4.size()) row[5] = format_number(series.c4[i]);
    csv.rows.push_back(std::move(row));
  }
  return csv;
}

}  // namespace otoc
