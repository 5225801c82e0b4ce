#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "amp/cli.hpp"
#include "amp/config.hpp"
#include "amp/svg.hpp"
#include "amp/trace_io.hpp"

using namespace amp;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("amp_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream file(path, std::ios::binary);
  REQUIRE(file.good());
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

// cli_main prints metrics to stdout; capture it to keep test logs readable
// and to allow assertions on the printed text.
struct CaptureStdout {
  std::ostringstream captured;
  std::streambuf* saved;
  CaptureStdout() : saved(std::cout.rdbuf(captured.rdbuf())) {}
  ~CaptureStdout() { std::cout.rdbuf(saved); }
};

int run_cli(const std::vector<std::string>& args, std::string* out = nullptr) {
  std::vector<const char*> argv;
  argv.push_back("ampsim");
  for (const std::string& arg : args) argv.push_back(arg.c_str());
  CaptureStdout capture;
  const int status =
      cli_main(static_cast<int>(argv.size()), argv.data());
  if (out != nullptr) *out = capture.captured.str();
  return status;
}

std::size_t count_occurrences(const std::string& text,
                              const std::string& needle) {
  std::size_t count = 0;
  for (std::size_t pos = text.find(needle); pos != std::string::npos;
       pos = text.find(needle, pos + needle.size())) {
    ++count;
  }
  return count;
}

}  // namespace

// ---------------------------------------------------------------- config ---

TEST_CASE("json merge reaches every config field") {
  SimConfig config = example_config(PlantKind::EXAMPLE1);
  const json doc = {
      {"plant", "example2"},
      {"ts", 0.1},
      {"duration", 12.0},
      {"seed", 99},
      {"epsilon", 0.25},
      {"safeguard", "skip"},
      {"feedback", "plant_history"},
      {"oracle", true},
      {"window_start", 3.5},
      {"noise", {{"std", 0.125}}},
      {"reference", {{"shape", "constant"}, {"amplitude", 2.0},
                     {"frequency", 0.1}}},
      {"regressor", {{"p", 3}, {"q", 2}}},
      {"schedule", {{"kind", "step"}, {"start", 1.5}, {"end", 2.5},
                    {"t_start", 1.0}, {"t_end", 6.0}}},
      {"poles", {0.5, json::array({0.3, 0.2}), json::array({0.3, -0.2})}},
      {"s_coefficients", {1.0, -0.25}},
      {"dictionary",
       {{"levels", 8},
        {"entries", json::array({{{"family", "haar"}, {"kind", "wavelet"},
                                  {"shifts", 7}, {"scale", 0.5}}})},
        {"scalarization", {{"weights", {0.2, 0.3, 0.5, 0.7, 0.9}},
                           {"offset", 4.0}}}}},
  };
  apply_json(config, doc);

  CHECK(config.plant == PlantKind::EXAMPLE2);
  CHECK(config.ts == 0.1);
  CHECK(config.duration == 12.0);
  CHECK(config.seed == 99);
  CHECK(config.epsilon == 0.25);
  CHECK(config.safeguard == Safeguard::SKIP);
  CHECK(config.feedback == FeedbackSource::PLANT_HISTORY);
  CHECK(config.oracle);
  CHECK(config.window_start == 3.5);
  CHECK(config.noise_std == 0.125);
  CHECK(config.reference.shape == RefShape::CONSTANT);
  CHECK(config.reference.amplitude == 2.0);
  CHECK(config.reference.frequency == 0.1);
  CHECK(config.regressor.p == 3);
  CHECK(config.regressor.q == 2);
  CHECK(config.schedule.kind == ScheduleKind::STEP);
  CHECK(config.schedule.start_value == 1.5);
  CHECK(config.schedule.end_value == 2.5);
  CHECK(config.schedule.t_start == 1.0);
  CHECK(config.schedule.t_end == 6.0);
  REQUIRE(config.poles.size() == 3);
  CHECK(config.poles[0] == std::complex<double>(0.5, 0.0));
  CHECK(config.poles[1] == std::complex<double>(0.3, 0.2));
  CHECK(config.poles[2] == std::complex<double>(0.3, -0.2));
  CHECK(config.s_coefficients == std::vector<double>{1.0, -0.25});
  CHECK(config.dictionary.levels == 8);
  REQUIRE(config.dictionary.entries.size() == 1);
  CHECK(config.dictionary.entries[0].family == Family::HAAR);
  CHECK(config.dictionary.entries[0].kind == Kind::WAVELET);
  CHECK(config.dictionary.entries[0].shifts == 7);
  CHECK(config.dictionary.entries[0].scale == 0.5);
  CHECK(config.dictionary.scalarization.weights ==
        std::vector<double>{0.2, 0.3, 0.5, 0.7, 0.9});
  CHECK(config.dictionary.scalarization.offset == 4.0);
}

TEST_CASE("partial objects merge without clearing siblings") {
  SimConfig config = example_config(PlantKind::EXAMPLE1);
  const double amplitude = config.reference.amplitude;
  const int levels = config.dictionary.levels;
  apply_json(config, {{"reference", {{"frequency", 0.2}}},
                      {"dictionary", {{"scalarization", {{"offset", 1.0}}}}}});
  CHECK(config.reference.frequency == 0.2);
  CHECK(config.reference.amplitude == amplitude);
  CHECK(config.dictionary.levels == levels);
  CHECK(config.dictionary.scalarization.offset == 1.0);
  CHECK(!config.dictionary.entries.empty());
}

TEST_CASE("unknown keys are rejected with their full dotted path") {
  SimConfig config = example_config(PlantKind::EXAMPLE1);
  CHECK_THROWS_WITH_AS(apply_json(config, {{"noize", 1.0}}),
                       "unknown config key \"noize\"", std::invalid_argument);
  CHECK_THROWS_WITH_AS(apply_json(config, {{"noise", {{"stdd", 1.0}}}}),
                       "unknown config key \"noise.stdd\"",
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      apply_json(config,
                 {{"dictionary",
                   {{"entries", json::array({{{"familly", "haar"}}})}}}}),
      "unknown config key \"dictionary.entries[0].familly\"",
      std::invalid_argument);
}

TEST_CASE("config type and enum mismatches name the key") {
  SimConfig config = example_config(PlantKind::EXAMPLE1);
  CHECK_THROWS_WITH_AS(apply_json(config, {{"epsilon", "tiny"}}),
                       "config key \"epsilon\" expects a number",
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(apply_json(config, {{"seed", -3}}),
                       "config key \"seed\" expects a non-negative integer",
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(apply_json(config, {{"oracle", 1}}),
                       "config key \"oracle\" expects true or false",
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      apply_json(config, {{"plant", "example3"}}),
      "config key \"plant\" has unknown value \"example3\" (expected one "
      "of: example1, example2)",
      std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      apply_json(config, {{"poles", json::array({json{{"re", 0.5}}})}}),
      "config key \"poles[0]\" expects a real number or a [re, im] pair",
      std::invalid_argument);
}

TEST_CASE("overrides parse values as json with bare-word fallback") {
  SimConfig config = example_config(PlantKind::EXAMPLE1);
  apply_override(config, "noise.std=0.25");
  apply_override(config, "oracle=true");
  apply_override(config, "plant=example2");
  apply_override(config, "poles=[[0.5,0],[0.3,0.2],[0.3,-0.2]]");
  apply_override(config, "dictionary.scalarization.offset=1.25");
  CHECK(config.noise_std == 0.25);
  CHECK(config.oracle);
  CHECK(config.plant == PlantKind::EXAMPLE2);
  REQUIRE(config.poles.size() == 3);
  CHECK(config.poles[1] == std::complex<double>(0.3, 0.2));
  CHECK(config.dictionary.scalarization.offset == 1.25);

  CHECK_THROWS_WITH_AS(apply_override(config, "no_equals_sign"),
                       "override must look like key=value: \"no_equals_sign\"",
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(apply_override(config, "noise.stdd=1"),
                       "unknown config key \"noise.stdd\"",
                       std::invalid_argument);
}

TEST_CASE("config echo round-trips exactly") {
  for (PlantKind kind : {PlantKind::EXAMPLE1, PlantKind::EXAMPLE2}) {
    const SimConfig original = example_config(kind);
    const json echo = config_to_json(original);
    SimConfig rebuilt = example_config(kind == PlantKind::EXAMPLE1
                                           ? PlantKind::EXAMPLE2
                                           : PlantKind::EXAMPLE1);
    apply_json(rebuilt, echo);
    CHECK(config_to_json(rebuilt) == echo);
  }
}

TEST_CASE("custom base takes defaults from the plant named in the file") {
  CHECK(custom_base(json{{"plant", "example2"}}).plant ==
        PlantKind::EXAMPLE2);
  CHECK(custom_base(json{{"plant", "example2"}}).schedule.kind ==
        ScheduleKind::STEP);
  CHECK(custom_base(json::object()).plant == PlantKind::EXAMPLE1);
  CHECK_THROWS_AS(custom_base(json::array()), std::invalid_argument);
}

TEST_CASE("missing and malformed config files are reported") {
  CHECK_THROWS_WITH_AS(load_config_file("/nonexistent/amp.json"),
                       "config not found: /nonexistent/amp.json",
                       std::invalid_argument);
  const fs::path dir = fresh_dir("badjson");
  const fs::path bad = dir / "bad.json";
  std::ofstream(bad) << "{ not json";
  CHECK_THROWS_AS(load_config_file(bad.string()), std::invalid_argument);
}

// -------------------------------------------------------------- trace io ---

TEST_CASE("format_double is shortest round-trip decimal") {
  const double values[] = {0.0,   -0.0,   0.05,  1.0 / 3.0, 6.02e23,
                           1e300, -2.5e-7, 12345, 0.1,       -1.75};
  for (double value : values) {
    const std::string text = format_double(value);
    const double parsed = std::strtod(text.c_str(), nullptr);
    CHECK(std::memcmp(&parsed, &value, sizeof(double)) == 0);
  }
  CHECK(format_double(0.05) == "0.05");
  CHECK(format_double(0.0) == "0");
  CHECK(format_double(12345.0) == "12345");
}

TEST_CASE("trace csv has the pinned header and encodes optionals") {
  TraceRow row;
  row.k = 3;
  row.t = 0.15;
  row.y_m = 1.5;
  row.applied = true;
  row.selected_index = 7;
  TraceRow empty_row;  // no selection, applied false
  const std::string csv = trace_to_csv({row, empty_row});

  std::istringstream lines(csv);
  std::string line;
  REQUIRE(std::getline(lines, line));
  CHECK(line == "k,t,r,ym,y,u,f_true,f_hat,eta,e,selected_index,a,applied");
  REQUIRE(std::getline(lines, line));
  CHECK(line == "3,0.15,0,1.5,0,0,0,0,0,0,7,0,1");
  REQUIRE(std::getline(lines, line));
  CHECK(line == "0,0,0,0,0,0,0,0,0,0,,0,0");
  CHECK(!std::getline(lines, line));
}

TEST_CASE("atoms csv tabulates every atom over one period") {
  SimConfig config = example_config(PlantKind::EXAMPLE1);
  const Dictionary dict = build_dictionary(config.dictionary, 1);
  const std::string csv = atoms_to_csv(dict, 50);
  std::istringstream lines(csv);
  std::string header;
  REQUIRE(std::getline(lines, header));
  CHECK(header.rfind("x,atom_0,", 0) == 0);
  CHECK(count_occurrences(header, "atom_") == dict.size());
  std::size_t rows = 0;
  std::string line;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 50);
}

TEST_CASE("signal csv reader handles headers and x columns") {
  const fs::path dir = fresh_dir("signals");
  const fs::path plain = dir / "plain.csv";
  std::ofstream(plain) << "1.5\n-2\n0.25\n";
  CHECK(read_signal_csv(plain.string()) ==
        std::vector<double>{1.5, -2.0, 0.25});

  const fs::path with_header = dir / "with_header.csv";
  std::ofstream(with_header) << "x,value\n0,1.5\n0.1,2.5\n";
  CHECK(read_signal_csv(with_header.string()) ==
        std::vector<double>{1.5, 2.5});

  CHECK_THROWS_AS(read_signal_csv((dir / "absent.csv").string()),
                  std::invalid_argument);
  const fs::path empty = dir / "empty.csv";
  std::ofstream(empty) << "";
  CHECK_THROWS_AS(read_signal_csv(empty.string()), std::invalid_argument);
  const fs::path broken = dir / "broken.csv";
  std::ofstream(broken) << "1.0\nwhat\n";
  CHECK_THROWS_AS(read_signal_csv(broken.string()), std::invalid_argument);
}

TEST_CASE("run sidecar carries the echo and the derived state") {
  const SimConfig config = example_config(PlantKind::EXAMPLE1);
  RunResult result;
  result.s = {1.3, -0.72, 0.16};
  result.theta = {0.0, 1.0};
  result.atom_count = 24;
  const json sidecar = run_sidecar(config, result);
  CHECK(sidecar.at("config") == config_to_json(config));
  CHECK(sidecar.at("derived").at("s") == json({1.3, -0.72, 0.16}));
  CHECK(sidecar.at("derived").at("dictionary").at("atoms") == 24);
  CHECK(sidecar.at("derived").at("identifier").at("theta") ==
        json({0.0, 1.0}));
  CHECK(sidecar.at("derived").at("identifier").at("epsilon") ==
        config.epsilon);
  CHECK(sidecar.at("derived").at("identifier").at("safeguard") == "clamp");
}

// ------------------------------------------------------------------- svg ---

namespace {
std::vector<TraceRow> tiny_trace(std::size_t n) {
  std::vector<TraceRow> trace(n);
  for (std::size_t i = 0; i < n; ++i) {
    trace[i].k = static_cast<std::int64_t>(i);
    trace[i].t = 0.05 * static_cast<double>(i);
    trace[i].y = std::sin(0.3 * static_cast<double>(i));
    trace[i].y_m = std::cos(0.3 * static_cast<double>(i));
    trace[i].u = static_cast<double>(i);
  }
  return trace;
}
}  // namespace

TEST_CASE("trace svg has one polyline per column plus axes and legend") {
  const std::string svg = render_trace_svg(tiny_trace(10), {"y", "ym"});
  CHECK(count_occurrences(svg, "<polyline") == 2);
  CHECK(svg.find("t [s]") != std::string::npos);
  CHECK(svg.find(">y</text>") != std::string::npos);
  CHECK(svg.find(">ym</text>") != std::string::npos);
  CHECK(svg.rfind("<svg xmlns=\"http://www.w3.org/2000/svg\"", 0) == 0);

  CHECK(count_occurrences(render_trace_svg(tiny_trace(10), {"u"}),
                          "<polyline") == 1);
}

TEST_CASE("svg rejects empty traces and unknown columns") {
  CHECK_THROWS_WITH_AS(render_trace_svg({}, {"y"}), "trace is empty",
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(render_trace_svg(tiny_trace(5), {"bogus"}),
                       "unknown trace column \"bogus\"",
                       std::invalid_argument);
  CHECK_THROWS_AS(render_trace_svg(tiny_trace(5), {}),
                  std::invalid_argument);
  CHECK_THROWS_AS(render_chart({}, "", "x", "y"), std::invalid_argument);
  CHECK_THROWS_AS(
      render_chart({{"bad", {0.0, 1.0}, {0.0}}}, "", "x", "y"),
      std::invalid_argument);
}

TEST_CASE("svg output is byte-deterministic") {
  const std::vector<TraceRow> trace = tiny_trace(32);
  CHECK(render_trace_svg(trace, {"y", "ym", "e"}) ==
        render_trace_svg(trace, {"y", "ym", "e"}));
  const std::vector<Series> flat = {{"flat", {0.0, 1.0}, {2.0, 2.0}}};
  CHECK(render_chart(flat, "t", "x", "y") == render_chart(flat, "t", "x", "y"));
}

// ------------------------------------------------------------------- cli ---

TEST_CASE("cli example run writes the full artifact set") {
  const fs::path out = fresh_dir("cli_e1");
  std::string stdout_text;
  const int status = run_cli({"example1", "--out", out.string(), "--set",
                              "duration=5", "--svg"},
                             &stdout_text);
  REQUIRE(status == 0);

  const std::string trace = slurp(out / "trace.csv");
  CHECK(trace.rfind("k,t,r,ym,y,u,f_true,f_hat,eta,e,selected_index,a,applied"
                    "\n",
                    0) == 0);
  CHECK(count_occurrences(trace, "\n") == 101);  // header + 100 steps

  const json metrics = json::parse(slurp(out / "metrics.json"));
  CHECK(metrics.contains("tracking_rmse"));
  CHECK(stdout_text.find("tracking_rmse") != std::string::npos);

  const json sidecar = json::parse(slurp(out / "config.json"));
  CHECK(sidecar.at("config").at("plant") == "example1");
  CHECK(sidecar.at("config").at("duration") == 5.0);
  CHECK(sidecar.at("derived").at("s").size() == 3);

  CHECK(count_occurrences(slurp(out / "tracking.svg"), "<polyline") == 2);
  CHECK(count_occurrences(slurp(out / "input.svg"), "<polyline") == 1);
}

TEST_CASE("cli oracle run with zero noise tracks exactly") {
  const fs::path out = fresh_dir("cli_oracle");
  REQUIRE(run_cli({"example1", "--out", out.string(), "--set", "noise.std=0",
                   "--set", "oracle=true"}) == 0);
  const json metrics = json::parse(slurp(out / "metrics.json"));
  CHECK(metrics.at("tracking_rmse").get<double>() <= 1e-9);
}

TEST_CASE("cli rejects missing configs and unknown keys nonzero") {
  CHECK(run_cli({"custom", "missing.json"}) != 0);
  CHECK(run_cli({"custom"}) != 0);
  CHECK(run_cli({"example1", "--set", "noise.stdd=1"}) != 0);
  CHECK(run_cli({"example1", "--set", "plant=example9"}) != 0);
  CHECK(run_cli({"bogus_subcommand"}) != 0);
  CHECK(run_cli({}) != 0);
}

TEST_CASE("cli custom run resolves defaults then file then overrides") {
  const fs::path dir = fresh_dir("cli_custom");
  const fs::path path = dir / "run.json";
  std::ofstream(path) << json{{"plant", "example2"},
                              {"duration", 10.0},
                              {"noise", {{"std", 0.0}}}}
                             .dump();
  const fs::path out = dir / "out";
  REQUIRE(run_cli({"custom", path.string(), "--out", out.string(), "--set",
                   "duration=5"}) == 0);
  const json sidecar = json::parse(slurp(out / "config.json"));
  CHECK(sidecar.at("config").at("plant") == "example2");
  CHECK(sidecar.at("config").at("schedule").at("kind") == "step");
  CHECK(sidecar.at("config").at("duration") == 5.0);  // override beats file
  CHECK(sidecar.at("config").at("noise").at("std") == 0.0);
}

TEST_CASE("cli runs are byte-deterministic") {
  const fs::path out1 = fresh_dir("cli_det1");
  const fs::path out2 = fresh_dir("cli_det2");
  const std::vector<std::string> base = {"example2", "--set", "duration=5"};
  std::vector<std::string> first = base;
  first.insert(first.end(), {"--out", out1.string()});
  std::vector<std::string> second = base;
  second.insert(second.end(), {"--out", out2.string()});
  REQUIRE(run_cli(first) == 0);
  REQUIRE(run_cli(second) == 0);
  CHECK(slurp(out1 / "trace.csv") == slurp(out2 / "trace.csv"));
  CHECK(slurp(out1 / "metrics.json") == slurp(out2 / "metrics.json"));
  CHECK(slurp(out1 / "config.json") == slurp(out2 / "config.json"));
}

TEST_CASE("cli decompose reconstructs a dictionary signal") {
  const fs::path dir = fresh_dir("cli_dec");
  SimConfig config = example_config(PlantKind::EXAMPLE1);
  const Dictionary dict = build_dictionary(config.dictionary, 1);

  // signal living inside the dictionary span: sample two atoms
  std::string csv = "value\n";
  for (std::size_t i = 0; i < 200; ++i) {
    const double x = static_cast<double>(i) * 10.0 / 200.0;
    csv += format_double(2.0 * atom_eval(dict.atoms[3], x) -
                         1.5 * atom_eval(dict.atoms[8], x));
    csv += '\n';
  }
  const fs::path signal = dir / "signal.csv";
  std::ofstream(signal) << csv;

  const fs::path out = dir / "out";
  std::string stdout_text;
  REQUIRE(run_cli({"decompose", signal.string(), "--out", out.string(),
                   "--svg"},
                  &stdout_text) == 0);
  CHECK(slurp(out / "picks.csv").rfind("pick,atom,coefficient,residual_norm",
                                       0) == 0);
  CHECK(slurp(out / "reconstruction.csv").rfind("i,x,f,f_hat,residual", 0) ==
        0);
  CHECK(count_occurrences(slurp(out / "decompose.svg"), "<polyline") == 2);
  const json summary = json::parse(stdout_text);
  CHECK(summary.at("picks").get<int>() >= 1);
  CHECK(summary.at("final_norm").get<double>() <
        summary.at("initial_norm").get<double>());
}

TEST_CASE("cli export-atoms writes the gallery") {
  const fs::path out = fresh_dir("cli_atoms");
  std::string stdout_text;
  REQUIRE(run_cli({"export-atoms", "--out", out.string(), "--svg", "--set",
                   "dictionary.entries=[{\"family\":\"haar\",\"kind\":"
                   "\"scaling\",\"shifts\":4}]"},
                  &stdout_text) == 0);
  const std::string csv = slurp(out / "atoms.csv");
  CHECK(csv.rfind("x,atom_0,atom_1,atom_2,atom_3\n", 0) == 0);
  CHECK(count_occurrences(csv, "\n") == 1001);
  CHECK(count_occurrences(slurp(out / "atoms.svg"), "<polyline") == 4);
  CHECK(json::parse(stdout_text).at("atoms") == 4);
}
