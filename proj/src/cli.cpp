#include "amp/cli.hpp"

#include <cmath>
#include <cstddef>
#include <filesystem>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "amp/config.hpp"
#include "amp/matching_pursuit.hpp"
#include "amp/svg.hpp"
#include "amp/trace_io.hpp"

namespace amp {
namespace {

namespace fs = std::filesystem;

struct CommonArgs {
  std::string config_path;
  std::string out_dir = ".";
  std::vector<std::string> overrides;
  bool svg = false;
};

void add_common(CLI::App* cmd, CommonArgs& args, const char* config_help) {
  cmd->add_option("--config", args.config_path, config_help);
  cmd->add_option("--out", args.out_dir, "output directory (created)");
  cmd->add_option("--set", args.overrides,
                  "config override, key.path=value (repeatable)")
      ->type_size(1);
  cmd->add_flag("--svg", args.svg, "also render SVG plots");
}

fs::path prepare_out_dir(const CommonArgs& args) {
  const fs::path out(args.out_dir);
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) {
    throw std::runtime_error("cannot create output directory " +
                             out.string() + ": " + ec.message());
  }
  return out;
}

SimConfig resolve_run_config(PlantKind kind, bool is_custom,
                             const CommonArgs& args) {
  SimConfig config;
  if (is_custom) {
    if (args.config_path.empty()) {
      throw std::invalid_argument(
          "custom requires a config path (positional or --config)");
    }
    const nlohmann::json doc = load_config_file(args.config_path);
    config = custom_base(doc);
    apply_json(config, doc);
  } else {
    config = example_config(kind);
    if (!args.config_path.empty()) {
      apply_json(config, load_config_file(args.config_path));
    }
  }
  for (const std::string& assignment : args.overrides) {
    apply_override(config, assignment);
  }
  return config;
}

int run_simulation(PlantKind kind, bool is_custom, const CommonArgs& args) {
  const SimConfig config = resolve_run_config(kind, is_custom, args);
  const RunResult result = run_closed_loop(config);
  const fs::path out = prepare_out_dir(args);

  write_text_file((out / "trace.csv").string(), trace_to_csv(result.trace));
  write_text_file((out / "metrics.json").string(),
                  metrics_to_json(result.metrics).dump(2) + "\n");
  write_text_file((out / "config.json").string(),
                  run_sidecar(config, result).dump(2) + "\n");
  if (args.svg) {
    write_text_file((out / "tracking.svg").string(),
                    render_trace_svg(result.trace, {"ym", "y"}));
    write_text_file((out / "input.svg").string(),
                    render_trace_svg(result.trace, {"u"}));
  }
  std::cout << metrics_to_json(result.metrics).dump(2) << "\n";
  return 0;
}

// Dictionary for the offline subcommands, from defaults plus any file or
// --set overrides; a single atom is enough here.
Dictionary offline_dictionary(const CommonArgs& args,
                              const std::string& config_file) {
  SimConfig config = example_config(PlantKind::EXAMPLE1);
  if (!config_file.empty()) {
    apply_json(config, load_config_file(config_file));
  }
  for (const std::string& assignment : args.overrides) {
    apply_override(config, assignment);
  }
  return build_dictionary(config.dictionary, 1);
}

int run_decompose(const CommonArgs& args) {
  if (args.config_path.empty()) {
    throw std::invalid_argument(
        "decompose requires a signal CSV path (positional or --config)");
  }
  const std::vector<double> samples = read_signal_csv(args.config_path);
  const Dictionary dict = offline_dictionary(args, "");

  const double period = dict.atoms.front().period;
  std::vector<double> grid(samples.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid[i] = static_cast<double>(i) * period /
              static_cast<double>(grid.size());
  }
  const SampledDictionary sampled = sample_dictionary(dict, grid);

  double norm_sq = 0.0;
  for (double v : samples) norm_sq += v * v;
  const double tol = 1e-10 * std::sqrt(norm_sq);

  const SampledSignal signal{samples};
  const MpResult mp =
      decompose(signal, sampled, sampled.columns.size(), tol);
  const SampledSignal rebuilt = reconstruct(mp, sampled);

  const fs::path out = prepare_out_dir(args);
  std::string picks = "pick,atom,coefficient,residual_norm\n";
  for (std::size_t i = 0; i < mp.picks.size(); ++i) {
    picks += std::to_string(i);
    picks += ',';
    picks += std::to_string(mp.picks[i].index);
    picks += ',';
    picks += format_double(mp.picks[i].coefficient);
    picks += ',';
    picks += format_double(mp.residual_norms[i + 1]);
    picks += '\n';
  }
  write_text_file((out / "picks.csv").string(), picks);

  std::string recon = "i,x,f,f_hat,residual\n";
  for (std::size_t i = 0; i < samples.size(); ++i) {
    recon += std::to_string(i);
    recon += ',';
    recon += format_double(grid[i]);
    recon += ',';
    recon += format_double(samples[i]);
    recon += ',';
    recon += format_double(rebuilt.values[i]);
    recon += ',';
    recon += format_double(mp.residual[i]);
    recon += '\n';
  }
  write_text_file((out / "reconstruction.csv").string(), recon);

  if (args.svg) {
    write_text_file(
        (out / "decompose.svg").string(),
        render_chart({{"f", grid, samples}, {"f_hat", grid, rebuilt.values}},
                     "", "x", "value"));
  }

  const nlohmann::json summary{
      {"picks", mp.picks.size()},
      {"initial_norm", mp.residual_norms.front()},
      {"final_norm", mp.residual_norms.back()},
  };
  std::cout << summary.dump(2) << "\n";
  return 0;
}

int run_export_atoms(const CommonArgs& args) {
  const Dictionary dict = offline_dictionary(args, args.config_path);
  const fs::path out = prepare_out_dir(args);

  constexpr std::size_t kSamples = 1000;
  write_text_file((out / "atoms.csv").string(), atoms_to_csv(dict, kSamples));

  if (args.svg) {
    const double period = dict.atoms.front().period;
    std::vector<double> grid(kSamples);
    for (std::size_t i = 0; i < kSamples; ++i) {
      grid[i] = static_cast<double>(i) * period / kSamples;
    }
    std::vector<Series> series;
    series.reserve(dict.size());
    for (std::size_t i = 0; i < dict.size(); ++i) {
      Series s;
      s.label = "atom_" + std::to_string(i);
      s.x = grid;
      s.y.resize(kSamples);
      for (std::size_t j = 0; j < kSamples; ++j) {
        s.y[j] = atom_eval(dict.atoms[i], grid[j]);
      }
      series.push_back(std::move(s));
    }
    write_text_file((out / "atoms.svg").string(),
                    render_chart(series, "dictionary atoms", "x", "value"));
  }

  std::cout << nlohmann::json{{"atoms", dict.size()}}.dump(2) << "\n";
  return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"adaptive matching-pursuit identification and control"};
  app.require_subcommand(1);

  CommonArgs example1_args, example2_args, custom_args, decompose_args,
      export_args;

  CLI::App* example1 = app.add_subcommand(
      "example1", "run the first benchmark plant with built-in defaults");
  add_common(example1, example1_args, "JSON config overlaying the defaults");

  CLI::App* example2 = app.add_subcommand(
      "example2", "run the second benchmark plant with built-in defaults");
  add_common(example2, example2_args, "JSON config overlaying the defaults");

  CLI::App* custom =
      app.add_subcommand("custom", "run a fully custom JSON config");
  custom->add_option("path", custom_args.config_path, "JSON config path");
  add_common(custom, custom_args, "JSON config path");

  CLI::App* decomp = app.add_subcommand(
      "decompose", "greedy decomposition of a sampled signal");
  decomp->add_option("signal", decompose_args.config_path,
                     "signal CSV, one sample per line");
  add_common(decomp, decompose_args, "signal CSV, one sample per line");

  CLI::App* export_atoms = app.add_subcommand(
      "export-atoms", "tabulate the dictionary atoms as CSV");
  add_common(export_atoms, export_args, "JSON config overlaying the defaults");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (example1->parsed()) {
      return run_simulation(PlantKind::EXAMPLE1, false, example1_args);
    }
    if (example2->parsed()) {
      return run_simulation(PlantKind::EXAMPLE2, false, example2_args);
    }
    if (custom->parsed()) {
      return run_simulation(PlantKind::EXAMPLE1, true, custom_args);
    }
    if (decomp->parsed()) {
      return run_decompose(decompose_args);
    }
    if (export_atoms->parsed()) {
      return run_export_atoms(export_args);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace amp
