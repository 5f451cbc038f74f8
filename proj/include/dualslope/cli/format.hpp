#pragma once

#include <charconv>
#include <cmath>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace dualslope::cli {

/// Shortest-round-trip is not wanted here: 9 significant digits, general
/// notation, '.' separator regardless of locale.
inline std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 9);
  return std::string(buf, res.ptr);
}

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void comment(std::string_view text) { out_ << "# " << text << '\n'; }

  void header(const std::vector<std::string>& columns) {
    for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
    out_ << '\n';
  }

  // Cells are numbers or preformatted strings.
  template <class... Cells>
  void row(const Cells&... cells) {
    bool first = true;
    ((out_ << (first ? "" : ",") << cell(cells), first = false), ...);
    out_ << '\n';
  }

  void row(const std::vector<double>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << format_number(cells[i]);
    out_ << '\n';
  }

 private:
  static std::string cell(double v) { return format_number(v); }
  static std::string cell(std::string_view s) { return std::string(s); }
  static std::string cell(const char* s) { return s; }

  std::ostream& out_;
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double t) { return 10.0 * std::log10(t); }

}  // namespace dualslope::cli
