#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "amp/dictionary.hpp"

namespace amp {

struct RegressorConfig {
  int p = 2;  // output lags
  int q = 1;  // input lags
};

// [y(k-1)..y(k-p), u(k-1)..u(k-q)], most recent first, zero-filled while the
// histories are still shorter than the lag counts.  Histories are passed
// oldest-first, so back() is the k-1 sample.
std::vector<double> build_regressor(std::span<const double> y_history,
                                    std::span<const double> u_history,
                                    const RegressorConfig& config);

struct Selection {
  std::size_t index = 0;    // argmax |g_i|, ties to the lowest index
  double value = 0.0;       // g at that index (signed)
  bool below_threshold = false;  // max |g_i| < epsilon
};

Selection select_index(std::span<const double> g, double epsilon);

enum class Safeguard { CLAMP, SKIP };

struct UpdateRecord {
  double error_before = 0.0;      // y - g.theta before the correction
  std::size_t selected_index = 0;
  double correlation = 0.0;       // g at the selected index
  bool applied = false;
};

// Online single-coefficient estimator: each update corrects exactly the one
// coefficient whose basis response at the current regressor is largest in
// magnitude, so the post-update model interpolates the new sample.
class AmpIdentifier {
 public:
  AmpIdentifier(const Dictionary& dictionary, double epsilon,
                Safeguard safeguard);

  // Dot product of the basis responses with theta (compensated, so the
  // interpolation identity below survives in double precision).
  double predict(std::span<const double> regressor) const;

  // e = y - predict; theta[m] += e / g_m when |g_m| >= epsilon.  Below the
  // threshold, CLAMP divides by sign(g_m)*epsilon instead and SKIP leaves
  // theta untouched.  After an applied above-threshold update,
  // predict(regressor) == y within 1e-12 * max(1, |y|).
  UpdateRecord update(std::span<const double> regressor, double y);

  const Dictionary& dictionary() const { return *dict_; }
  const std::vector<double>& theta() const { return theta_; }
  double epsilon() const { return epsilon_; }
  Safeguard safeguard() const { return safeguard_; }
  std::optional<std::size_t> last_selected() const { return last_selected_; }

 private:
  const Dictionary* dict_;
  std::vector<double> theta_;
  double epsilon_;
  Safeguard safeguard_;
  std::optional<std::size_t> last_selected_;
};

}  // namespace amp
