#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "dualslope/cli/format.hpp"

namespace dualslope::cli {

struct Series {
  std::string label;
  std::vector<double> xs;
  std::vector<double> ys;
  bool markers = false;  // draw points instead of a line
  bool dashed = false;
};

struct ChartSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
  // Fixed y range when lo < hi; otherwise fitted to the data.
  double y_lo = 0.0;
  double y_hi = 0.0;
};

namespace detail {

inline std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Axis {
  double lo;
  double hi;
  bool log;

  double map(double v, double px_lo, double px_hi) const {
    const double a = log ? std::log10(lo) : lo;
    const double b = log ? std::log10(hi) : hi;
    const double x = log ? std::log10(v) : v;
    return px_lo + (x - a) / (b - a) * (px_hi - px_lo);
  }

  std::vector<double> ticks() const {
    std::vector<double> out;
    if (log) {
      const int first = static_cast<int>(std::ceil(std::log10(lo) - 1e-9));
      const int last = static_cast<int>(std::floor(std::log10(hi) + 1e-9));
      const int stride = std::max(1, (last - first) / 8 + 1);
      for (int k = first; k <= last; k += stride) out.push_back(std::pow(10.0, k));
      return out;
    }
    const double raw = (hi - lo) / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
      if (m * mag >= raw) {
        step = m * mag;
        break;
      }
    }
    for (double v = std::ceil(lo / step) * step; v <= hi + 1e-9 * step; v += step) {
      out.push_back(std::abs(v) < 1e-12 * step ? 0.0 : v);
    }
    return out;
  }
};

inline Axis fit_axis(const std::vector<Series>& series, bool use_x, bool log) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& s : series) {
    for (double v : use_x ? s.xs : s.ys) {
      if (!std::isfinite(v) || (log && !(v > 0.0))) continue;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (!std::isfinite(lo)) return {1.0, 10.0, log};
  if (log) {
    lo = std::pow(10.0, std::floor(std::log10(lo)));
    hi = std::pow(10.0, std::ceil(std::log10(hi)));
    if (hi <= lo) hi = lo * 10.0;
  } else if (hi <= lo) {
    hi = lo + 1.0;
  }
  return {lo, hi, log};
}

}  // namespace detail

/// Static line chart: axes, ticks, legend; no scripts or external references.
inline void write_svg(std::ostream& out, const ChartSpec& chart, const std::vector<Series>& series) {
  constexpr double kWidth = 720;
  constexpr double kHeight = 480;
  constexpr double kLeft = 80;
  constexpr double kRight = 200;
  constexpr double kTop = 40;
  constexpr double kBottom = 60;
  static constexpr std::array<const char*, 8> kColors = {
      "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"};

  const auto xa = detail::fit_axis(series, true, chart.log_x);
  auto ya = detail::fit_axis(series, false, chart.log_y);
  if (chart.y_lo < chart.y_hi) ya = {chart.y_lo, chart.y_hi, chart.log_y};
  const double x0 = kLeft;
  const double x1 = kWidth - kRight;
  const double y0 = kHeight - kBottom;
  const double y1 = kTop;
  auto px = [&](double v) { return format_number(xa.map(v, x0, x1)); };
  auto py = [&](double v) { return format_number(ya.map(v, y0, y1)); };
  auto in_range = [&](double x, double y) {
    if (!std::isfinite(x) || !std::isfinite(y)) return false;
    if ((xa.log && !(x > 0)) || (ya.log && !(y > 0))) return false;
    return x >= xa.lo && x <= xa.hi && y >= ya.lo && y <= ya.hi;
  };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << (x0 + x1) / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">"
      << detail::escape_xml(chart.title) << "</text>\n";

  for (double t : xa.ticks()) {
    out << "<line x1=\"" << px(t) << "\" y1=\"" << y0 << "\" x2=\"" << px(t) << "\" y2=\"" << y1
        << "\" stroke=\"#ddd\"/>\n";
    out << "<text x=\"" << px(t) << "\" y=\"" << y0 + 18 << "\" text-anchor=\"middle\">"
        << format_number(t) << "</text>\n";
  }
  for (double t : ya.ticks()) {
    out << "<line x1=\"" << x0 << "\" y1=\"" << py(t) << "\" x2=\"" << x1 << "\" y2=\"" << py(t)
        << "\" stroke=\"#ddd\"/>\n";
    out << "<text x=\"" << x0 - 6 << "\" y=\"" << py(t) << "\" text-anchor=\"end\" dy=\"4\">"
        << format_number(t) << "</text>\n";
  }
  out << "<rect x=\"" << x0 << "\" y=\"" << y1 << "\" width=\"" << x1 - x0 << "\" height=\""
      << y0 - y1 << "\" fill=\"none\" stroke=\"black\"/>\n";
  out << "<text x=\"" << (x0 + x1) / 2 << "\" y=\"" << kHeight - 16
      << "\" text-anchor=\"middle\">" << detail::escape_xml(chart.x_label) << "</text>\n";
  out << "<text transform=\"translate(20," << (y0 + y1) / 2
      << ") rotate(-90)\" text-anchor=\"middle\">" << detail::escape_xml(chart.y_label)
      << "</text>\n";

  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& s = series[i];
    const char* color = kColors[i % kColors.size()];
    if (s.markers) {
      for (std::size_t k = 0; k < s.xs.size() && k < s.ys.size(); ++k) {
        if (!in_range(s.xs[k], s.ys[k])) continue;
        out << "<circle cx=\"" << px(s.xs[k]) << "\" cy=\"" << py(s.ys[k])
            << "\" r=\"3\" fill=\"none\" stroke=\"" << color << "\"/>\n";
      }
    } else {
      out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\""
          << (s.dashed ? " stroke-dasharray=\"6 4\"" : "") << " points=\"";
      bool first = true;
      for (std::size_t k = 0; k < s.xs.size() && k < s.ys.size(); ++k) {
        if (!in_range(s.xs[k], s.ys[k])) continue;
        out << (first ? "" : " ") << px(s.xs[k]) << ',' << py(s.ys[k]);
        first = false;
      }
      out << "\"/>\n";
    }
    const double ly = kTop + 10 + 20.0 * static_cast<double>(i);
    const double lx = x1 + 16;
    if (s.markers) {
      out << "<circle cx=\"" << lx + 12 << "\" cy=\"" << ly << "\" r=\"3\" fill=\"none\" stroke=\""
          << color << "\"/>\n";
    } else {
      out << "<line x1=\"" << lx << "\" y1=\"" << ly << "\" x2=\"" << lx + 24 << "\" y2=\"" << ly
          << "\" stroke=\"" << color << "\" stroke-width=\"1.5\""
          << (s.dashed ? " stroke-dasharray=\"6 4\"" : "") << "/>\n";
    }
    out << "<text x=\"" << lx + 30 << "\" y=\"" << ly + 4 << "\">" << detail::escape_xml(s.label)
        << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace dualslope::cli
