#pragma once

#include <string>
#include <vector>

#include "amp/simulation.hpp"

namespace amp {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;  // same length as x
};

// Standalone SVG line chart: one polyline per series, shared axes with tick
// labels, and a legend. Output is byte-deterministic for identical inputs.
// Rejects empty input and length mismatches.
std::string render_chart(const std::vector<Series>& series,
                         const std::string& title,
                         const std::string& x_label,
                         const std::string& y_label);

// Chart of trace columns against t. Column names follow the trace CSV
// header: r, ym, y, u, f_true, f_hat, eta, e, a. Unknown columns and empty
// traces are rejected.
std::string render_trace_svg(const std::vector<TraceRow>& trace,
                             const std::vector<std::string>& columns);

}  // namespace amp
