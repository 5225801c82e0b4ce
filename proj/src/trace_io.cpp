#include "amp/trace_io.hpp"

#include "amp/config.hpp"

#include <charconv>
#include <cstddef>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace amp {

std::string format_double(double value) {
  char buffer[32];
  const std::to_chars_result result =
      std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

std::string trace_to_csv(const std::vector<TraceRow>& trace) {
  std::string out = kTraceHeader;
  out += '\n';
  for (const TraceRow& row : trace) {
    out += std::to_string(row.k);
    out += ',';
    out += format_double(row.t);
    out += ',';
    out += format_double(row.r);
    out += ',';
    out += format_double(row.y_m);
    out += ',';
    out += format_double(row.y);
    out += ',';
    out += format_double(row.u);
    out += ',';
    out += format_double(row.f_true);
    out += ',';
    out += format_double(row.f_hat);
    out += ',';
    out += format_double(row.eta);
    out += ',';
    out += format_double(row.e);
    out += ',';
    if (row.selected_index.has_value()) {
      out += std::to_string(*row.selected_index);
    }
    out += ',';
    out += format_double(row.a);
    out += ',';
    out += row.applied ? '1' : '0';
    out += '\n';
  }
  return out;
}

nlohmann::json metrics_to_json(const Metrics& metrics) {
  return nlohmann::json{
      {"tracking_rmse", metrics.tracking_rmse},
      {"identification_rmse", metrics.identification_rmse},
      {"max_abs_u", metrics.max_abs_u},
      {"max_abs_y", metrics.max_abs_y},
  };
}

nlohmann::json run_sidecar(const SimConfig& config, const RunResult& result) {
  return nlohmann::json{
      {"config", config_to_json(config)},
      {"derived",
       {{"s", result.s},
        {"dictionary", {{"atoms", result.atom_count}}},
        {"identifier",
         {{"theta", result.theta},
          {"epsilon", config.epsilon},
          {"safeguard",
           config.safeguard == Safeguard::CLAMP ? "clamp" : "skip"}}}}},
  };
}

std::string atoms_to_csv(const Dictionary& dict, std::size_t n_samples) {
  if (dict.atoms.empty()) {
    throw std::invalid_argument("dictionary has no atoms");
  }
  if (n_samples == 0) {
    throw std::invalid_argument("atom export needs at least one sample");
  }
  const double period = dict.atoms.front().period;
  std::string out = "x";
  for (std::size_t i = 0; i < dict.atoms.size(); ++i) {
    out += ",atom_";
    out += std::to_string(i);
  }
  out += '\n';
  for (std::size_t j = 0; j < n_samples; ++j) {
    const double x = static_cast<double>(j) * period /
                     static_cast<double>(n_samples);
    out += format_double(x);
    for (const Atom& atom : dict.atoms) {
      out += ',';
      out += format_double(atom_eval(atom, x));
    }
    out += '\n';
  }
  return out;
}

std::vector<double> read_signal_csv(const std::string& path) {
  std::ifstream file(path);
  if (!file) {
    throw std::invalid_argument("signal not found: " + path);
  }
  std::vector<double> values;
  std::string line;
  bool first = true;
  while (std::getline(file, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::size_t comma = line.rfind(',');
    const std::string field =
        comma == std::string::npos ? line : line.substr(comma + 1);
    double value = 0.0;
    const std::from_chars_result parsed = std::from_chars(
        field.data(), field.data() + field.size(), value);
    if (parsed.ec != std::errc() || parsed.ptr != field.data() + field.size()) {
      if (first) {
        first = false;  // header line
        continue;
      }
      throw std::invalid_argument("signal file has a non-numeric line: \"" +
                                  line + "\"");
    }
    first = false;
    values.push_back(value);
  }
  if (values.empty()) {
    throw std::invalid_argument("signal file has no samples: " + path);
  }
  return values;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    throw std::runtime_error("cannot open for writing: " + path);
  }
  file << content;
  if (!file) {
    throw std::runtime_error("write failed: " + path);
  }
}

}  // namespace amp
