#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "amp/control.hpp"
#include "amp/dictionary.hpp"
#include "amp/identifier.hpp"
#include "amp/plants.hpp"

namespace amp {

enum class FeedbackSource { MODEL_HISTORY, PLANT_HISTORY };

enum class RefShape { SINE, CONSTANT };

struct ReferenceSpec {
  RefShape shape = RefShape::SINE;
  double amplitude = 1.0;
  double frequency = 0.04;  // Hz
};

double reference_value(const ReferenceSpec& ref, double t);

struct SimConfig {
  PlantKind plant = PlantKind::EXAMPLE1;
  ParamSchedule schedule;
  DictionaryConfig dictionary;
  RegressorConfig regressor;
  // poles win when both are given; at least one must be non-empty
  std::vector<std::complex<double>> poles;
  std::vector<double> s_coefficients;
  ReferenceSpec reference;
  double ts = 0.05;
  double duration = 50.0;
  double noise_std = 0.01;
  std::uint64_t seed = 12345;
  double epsilon = 1e-2;
  Safeguard safeguard = Safeguard::CLAMP;
  FeedbackSource feedback = FeedbackSource::MODEL_HISTORY;
  bool oracle = false;           // control from the true f; no learning
  double window_start = -1.0;    // metrics window; < 0 means duration / 2
};

// s from poles when poles are present, otherwise the explicit coefficients.
std::vector<double> resolve_coefficients(const SimConfig& config);

struct TraceRow {
  std::int64_t k = 0;
  double t = 0.0;
  double r = 0.0;
  double y_m = 0.0;
  double y = 0.0;
  double u = 0.0;
  double f_true = 0.0;
  double f_hat = 0.0;
  double eta = 0.0;  // f_true - f_hat, bitwise
  double e = 0.0;    // y_m - y, bitwise
  std::optional<std::size_t> selected_index;
  double a = 0.0;
  bool applied = false;
};

struct Metrics {
  double tracking_rmse = 0.0;        // RMS of e over the window
  double identification_rmse = 0.0;  // RMS of eta over the window
  double max_abs_u = 0.0;            // over the full trace
  double max_abs_y = 0.0;
};

Metrics compute_metrics(const std::vector<TraceRow>& trace,
                        double window_start);

struct RunResult {
  std::vector<TraceRow> trace;
  Metrics metrics;
  std::vector<double> s;      // resolved recursion coefficients
  std::vector<double> theta;  // final identifier coefficients
  std::size_t atom_count = 0;
};

// Fixed per-step order: reference, model output, regressor, prediction,
// control, noise, plant output, identifier update, trace append.  Reordering
// anything here invalidates the committed golden traces.  Any non-finite
// intermediate halts the run naming the step and the quantity.
RunResult run_closed_loop(const SimConfig& config);

// Built-in benchmark setups: plant, parameter schedule, pole placement, and
// shared defaults for everything the underlying problem leaves open.
SimConfig example_config(PlantKind kind);

}  // namespace amp
