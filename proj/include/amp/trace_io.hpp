#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "amp/dictionary.hpp"
#include "amp/simulation.hpp"

namespace amp {

// Shortest decimal form that parses back to the identical double.
std::string format_double(double value);

// Column order is pinned; golden traces and downstream readers depend on it.
inline constexpr const char* kTraceHeader =
    "k,t,r,ym,y,u,f_true,f_hat,eta,e,selected_index,a,applied";

// One header line plus one line per row, LF endings, no trailing spaces.
// Optional fields serialize as empty, booleans as 0/1.
std::string trace_to_csv(const std::vector<TraceRow>& trace);

nlohmann::json metrics_to_json(const Metrics& metrics);

// Run sidecar: the resolved config echo plus everything derived from it
// (recursion coefficients, dictionary size, final identifier state).
nlohmann::json run_sidecar(const SimConfig& config, const RunResult& result);

// Atom gallery: header "x,atom_0,..,atom_{n-1}", rows at n_samples points
// spread evenly over one period.
std::string atoms_to_csv(const Dictionary& dict, std::size_t n_samples);

// Signal for offline decomposition: one sample per line, last comma-separated
// field wins, a leading non-numeric header line is skipped.
std::vector<double> read_signal_csv(const std::string& path);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace amp
