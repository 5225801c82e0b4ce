#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace amp {

enum class ScheduleKind { CONSTANT, LINEAR_RAMP, STEP };

struct ParamSchedule {
  ScheduleKind kind = ScheduleKind::CONSTANT;
  double start_value = 1.0;
  double end_value = 1.0;
  double t_start = 0.0;
  double t_end = 0.0;
};

// CONSTANT: start_value.  LINEAR_RAMP: linear between the endpoints on
// [t_start, t_end], clamped outside.  STEP: start_value before t_end,
// end_value from t_end on.
double schedule_value(const ParamSchedule& schedule, double t);

// y1*(a*u1*y2 + 2.5) / (1 + y1^2 + y2^2 + u1^2); the denominator never drops
// below 1.
double f1_eval(double y1, double y2, double u1, double a);

// (0.8 - 0.5e^{-y1^2})*y1*a - (0.3 + 0.9e^{-y1^2})*y2 + 0.1*sin(pi*y1) + u1.
// The trailing u1 is part of f, so the plant output stays y = f + u.
double f2_eval(double y1, double y2, double u1, double a);

enum class PlantKind { EXAMPLE1, EXAMPLE2 };

using PlantMap = double (*)(double y1, double y2, double u1, double a);

PlantMap plant_map(PlantKind kind);

// Seeded Gaussian source (Marsaglia polar over mt19937_64, not the standard
// library distribution, so streams are identical on every platform).  A zero
// standard deviation returns 0 without consuming generator state.
class NoiseSource {
 public:
  NoiseSource(double std_dev, std::uint64_t seed);

  double next();

  double std_dev() const { return std_; }
  std::uint64_t seed() const { return seed_; }

 private:
  double uniform();  // in (-1, 1)

  double std_;
  std::uint64_t seed_;
  std::mt19937_64 rng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

struct PlantStepResult {
  double y = 0.0;
  double f_true = 0.0;
  double noise = 0.0;
};

// Second-order plant memory (two past outputs, one past input) plus the
// parameter schedule and noise stream; histories start at zero.
struct PlantState {
  std::vector<double> y_history;  // {y(k-1), y(k-2)}
  std::vector<double> u_history;  // {u(k-1)}
  double t = 0.0;
  double ts = 0.05;
  std::int64_t steps = 0;
  ParamSchedule schedule;
  NoiseSource noise;

  PlantState(ParamSchedule sched, NoiseSource noise_src, double ts_seconds);

  double current_a() const { return schedule_value(schedule, t); }
  double eval_f(PlantMap f) const {
    return f(y_history[0], y_history[1], u_history[0], current_a());
  }

  // y = (f_true + u) + noise, in exactly that association; then the
  // histories shift and t advances by ts.
  PlantStepResult step(double u, PlantMap f);

  // Shift histories and recompute t = steps * ts (recomputed, not
  // accumulated, so schedule switch times land on exact grid instants).
  void advance(double y, double u);
};

}  // namespace amp
