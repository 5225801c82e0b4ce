#include "amp/svg.hpp"

#include <algorithm>
#include <stdexcept>

#include "amp/trace_io.hpp"

namespace amp {
namespace {

constexpr double kWidth = 960.0;
constexpr double kHeight = 540.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 930.0;
constexpr double kTop = 50.0;
constexpr double kBottom = 480.0;
constexpr int kTicks = 5;

const char* const kPalette[] = {
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
};
constexpr std::size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

struct Range {
  double lo = 0.0;
  double hi = 1.0;
};

Range span_of(const std::vector<Series>& series, bool use_x) {
  Range range{0.0, 0.0};
  bool first = true;
  for (const Series& s : series) {
    const std::vector<double>& values = use_x ? s.x : s.y;
    for (double v : values) {
      if (first) {
        range.lo = range.hi = v;
        first = false;
      } else {
        range.lo = std::min(range.lo, v);
        range.hi = std::max(range.hi, v);
      }
    }
  }
  if (range.hi == range.lo) {  // flat data still needs a visible axis span
    range.lo -= 1.0;
    range.hi += 1.0;
  }
  return range;
}

std::string escape_xml(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

double map_x(double v, const Range& r) {
  return kLeft + (v - r.lo) / (r.hi - r.lo) * (kRight - kLeft);
}

double map_y(double v, const Range& r) {
  return kBottom - (v - r.lo) / (r.hi - r.lo) * (kBottom - kTop);
}

void append_line(std::string& out, double x1, double y1, double x2, double y2,
                 const char* stroke) {
  out += "<line x1=\"" + format_double(x1) + "\" y1=\"" + format_double(y1) +
         "\" x2=\"" + format_double(x2) + "\" y2=\"" + format_double(y2) +
         "\" stroke=\"" + stroke + "\" stroke-width=\"1\"/>\n";
}

void append_text(std::string& out, double x, double y, const char* anchor,
                 const std::string& text, int size) {
  out += "<text x=\"" + format_double(x) + "\" y=\"" + format_double(y) +
         "\" text-anchor=\"" + anchor + "\" font-family=\"monospace\"" +
         " font-size=\"" + std::to_string(size) + "\">" + escape_xml(text) +
         "</text>\n";
}

}  // namespace

std::string render_chart(const std::vector<Series>& series,
                         const std::string& title,
                         const std::string& x_label,
                         const std::string& y_label) {
  if (series.empty()) {
    throw std::invalid_argument("chart needs at least one series");
  }
  for (const Series& s : series) {
    if (s.x.empty()) {
      throw std::invalid_argument("series \"" + s.label + "\" is empty");
    }
    if (s.x.size() != s.y.size()) {
      throw std::invalid_argument("series \"" + s.label +
                                  "\" has mismatched x/y lengths");
    }
  }

  const Range xr = span_of(series, true);
  const Range yr = span_of(series, false);

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         format_double(kWidth) + "\" height=\"" + format_double(kHeight) +
         "\" viewBox=\"0 0 " + format_double(kWidth) + " " +
         format_double(kHeight) + "\">\n";
  out += "<rect width=\"" + format_double(kWidth) + "\" height=\"" +
         format_double(kHeight) + "\" fill=\"white\"/>\n";

  // grid and tick labels
  for (int i = 0; i < kTicks; ++i) {
    const double f = static_cast<double>(i) / (kTicks - 1);
    const double xv = xr.lo + f * (xr.hi - xr.lo);
    const double yv = yr.lo + f * (yr.hi - yr.lo);
    const double px = map_x(xv, xr);
    const double py = map_y(yv, yr);
    append_line(out, px, kBottom, px, kTop, "#e0e0e0");
    append_line(out, kLeft, py, kRight, py, "#e0e0e0");
    append_text(out, px, kBottom + 18.0, "middle", format_double(xv), 11);
    append_text(out, kLeft - 8.0, py + 4.0, "end", format_double(yv), 11);
  }

  // axes
  append_line(out, kLeft, kBottom, kRight, kBottom, "#000000");
  append_line(out, kLeft, kBottom, kLeft, kTop, "#000000");
  append_text(out, (kLeft + kRight) / 2.0, kHeight - 12.0, "middle", x_label,
              13);
  append_text(out, 16.0, (kTop + kBottom) / 2.0, "middle", y_label, 13);
  if (!title.empty()) {
    append_text(out, (kLeft + kRight) / 2.0, 24.0, "middle", title, 15);
  }

  // data
  for (std::size_t i = 0; i < series.size(); ++i) {
    const Series& s = series[i];
    out += "<polyline fill=\"none\" stroke=\"";
    out += kPalette[i % kPaletteSize];
    out += "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t j = 0; j < s.x.size(); ++j) {
      if (j != 0) out += ' ';
      out += format_double(map_x(s.x[j], xr));
      out += ',';
      out += format_double(map_y(s.y[j], yr));
    }
    out += "\"/>\n";
  }

  // legend, top-right inside the plot area
  for (std::size_t i = 0; i < series.size(); ++i) {
    const double ly = kTop + 16.0 + 18.0 * static_cast<double>(i);
    append_line(out, kRight - 150.0, ly, kRight - 120.0, ly,
                kPalette[i % kPaletteSize]);
    append_text(out, kRight - 112.0, ly + 4.0, "start", series[i].label, 12);
  }

  out += "</svg>\n";
  return out;
}

std::string render_trace_svg(const std::vector<TraceRow>& trace,
                             const std::vector<std::string>& columns) {
  if (trace.empty()) {
    throw std::invalid_argument("trace is empty");
  }
  if (columns.empty()) {
    throw std::invalid_argument("no columns selected");
  }
  std::vector<double> t;
  t.reserve(trace.size());
  for (const TraceRow& row : trace) t.push_back(row.t);

  std::vector<Series> series;
  series.reserve(columns.size());
  for (const std::string& column : columns) {
    double TraceRow::* field = nullptr;
    if (column == "r") field = &TraceRow::r;
    else if (column == "ym") field = &TraceRow::y_m;
    else if (column == "y") field = &TraceRow::y;
    else if (column == "u") field = &TraceRow::u;
    else if (column == "f_true") field = &TraceRow::f_true;
    else if (column == "f_hat") field = &TraceRow::f_hat;
    else if (column == "eta") field = &TraceRow::eta;
    else if (column == "e") field = &TraceRow::e;
    else if (column == "a") field = &TraceRow::a;
    else throw std::invalid_argument("unknown trace column \"" + column + "\"");

    Series s;
    s.label = column;
    s.x = t;
    s.y.reserve(trace.size());
    for (const TraceRow& row : trace) s.y.push_back(row.*field);
    series.push_back(std::move(s));
  }
  return render_chart(series, "", "t [s]", columns.size() == 1 ? columns[0]
                                                               : "value");
}

}  // namespace amp
