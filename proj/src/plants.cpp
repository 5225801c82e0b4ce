#include "amp/plants.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace amp {

double schedule_value(const ParamSchedule& schedule, double t) {
  switch (schedule.kind) {
    case ScheduleKind::CONSTANT:
      return schedule.start_value;
    case ScheduleKind::LINEAR_RAMP: {
      if (t >= schedule.t_end) return schedule.end_value;
      if (t <= schedule.t_start) return schedule.start_value;
      const double frac =
          (t - schedule.t_start) / (schedule.t_end - schedule.t_start);
      return schedule.start_value +
             (schedule.end_value - schedule.start_value) * frac;
    }
    case ScheduleKind::STEP:
      return t < schedule.t_end ? schedule.start_value : schedule.end_value;
  }
  throw std::logic_error("unreachable schedule kind");
}

double f1_eval(double y1, double y2, double u1, double a) {
  const double num = y1 * (a * u1 * y2 + 2.5);
  const double den = 1.0 + y1 * y1 + y2 * y2 + u1 * u1;
  return num / den;
}

double f2_eval(double y1, double y2, double u1, double a) {
  const double w = std::exp(-y1 * y1);
  return (0.8 - 0.5 * w) * y1 * a - (0.3 + 0.9 * w) * y2 +
         0.1 * std::sin(std::numbers::pi * y1) + u1;
}

PlantMap plant_map(PlantKind kind) {
  return kind == PlantKind::EXAMPLE1 ? f1_eval : f2_eval;
}

NoiseSource::NoiseSource(double std_dev, std::uint64_t seed)
    : std_(std_dev), seed_(seed), rng_(seed) {
  if (!(std_dev >= 0.0)) {
    throw std::invalid_argument("noise standard deviation must be >= 0");
  }
}

double NoiseSource::uniform() {
  // 53-bit mantissa in [0,1), mapped to (-1,1); the raw stream is part of
  // the golden-trace contract
  const double u =
      static_cast<double>(rng_() >> 11) * 0x1.0p-53;
  return 2.0 * u - 1.0;
}

double NoiseSource::next() {
  if (std_ == 0.0) return 0.0;
  if (has_spare_) {
    has_spare_ = false;
    return std_ * spare_;
  }
  double v1 = 0.0;
  double v2 = 0.0;
  double s = 0.0;
  do {
    v1 = uniform();
    v2 = uniform();
    s = v1 * v1 + v2 * v2;
  } while (s >= 1.0 || s == 0.0);
  const double m = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v2 * m;
  has_spare_ = true;
  return std_ * (v1 * m);
}

PlantState::PlantState(ParamSchedule sched, NoiseSource noise_src,
                       double ts_seconds)
    : y_history{0.0, 0.0},
      u_history{0.0},
      ts(ts_seconds),
      schedule(sched),
      noise(noise_src) {
  if (!(ts_seconds > 0.0)) {
    throw std::invalid_argument("sampling period must be positive");
  }
}

PlantStepResult PlantState::step(double u, PlantMap f) {
  if (!std::isfinite(u)) {
    throw std::invalid_argument("plant input must be finite");
  }
  PlantStepResult res;
  res.f_true = eval_f(f);
  res.noise = noise.next();
  res.y = (res.f_true + u) + res.noise;
  advance(res.y, u);
  return res;
}

void PlantState::advance(double y, double u) {
  y_history[1] = y_history[0];
  y_history[0] = y;
  u_history[0] = u;
  ++steps;
  t = static_cast<double>(steps) * ts;
}

}  // namespace amp
