#include "amp/identifier.hpp"

#include <cmath>
#include <stdexcept>

#include "amp/numerics.hpp"

namespace amp {

std::vector<double> build_regressor(std::span<const double> y_history,
                                    std::span<const double> u_history,
                                    const RegressorConfig& config) {
  if (config.p < 1 || config.q < 1) {
    throw std::invalid_argument("regressor lag counts must be at least 1");
  }
  std::vector<double> reg;
  reg.reserve(static_cast<std::size_t>(config.p + config.q));
  for (int i = 0; i < config.p; ++i) {
    const std::size_t lag = static_cast<std::size_t>(i);
    reg.push_back(lag < y_history.size()
                      ? y_history[y_history.size() - 1 - lag]
                      : 0.0);
  }
  for (int i = 0; i < config.q; ++i) {
    const std::size_t lag = static_cast<std::size_t>(i);
    reg.push_back(lag < u_history.size()
                      ? u_history[u_history.size() - 1 - lag]
                      : 0.0);
  }
  return reg;
}

Selection select_index(std::span<const double> g, double epsilon) {
  if (g.empty()) {
    throw std::invalid_argument("selection over an empty response vector");
  }
  Selection sel;
  double best = -1.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (std::abs(g[i]) > best) {
      best = std::abs(g[i]);
      sel.index = i;
      sel.value = g[i];
    }
  }
  sel.below_threshold = best < epsilon;
  return sel;
}

AmpIdentifier::AmpIdentifier(const Dictionary& dictionary, double epsilon,
                             Safeguard safeguard)
    : dict_(&dictionary),
      theta_(dictionary.size(), 0.0),
      epsilon_(epsilon),
      safeguard_(safeguard) {
  if (!(epsilon > 0.0)) {
    throw std::invalid_argument("epsilon must be positive");
  }
  if (dictionary.size() == 0) {
    throw std::invalid_argument("identifier needs a non-empty dictionary");
  }
}

double AmpIdentifier::predict(std::span<const double> regressor) const {
  const std::vector<double> g = evaluate_all(*dict_, regressor);
  return compensated_dot(g, theta_);
}

UpdateRecord AmpIdentifier::update(std::span<const double> regressor,
                                   double y) {
  if (!std::isfinite(y)) {
    throw std::invalid_argument("update target must be finite");
  }
  const std::vector<double> g = evaluate_all(*dict_, regressor);
  const double e = y - compensated_dot(g, theta_);
  const Selection sel = select_index(g, epsilon_);

  UpdateRecord rec;
  rec.error_before = e;
  rec.selected_index = sel.index;
  rec.correlation = sel.value;
  if (!sel.below_threshold) {
    theta_[sel.index] += e / sel.value;
    rec.applied = true;
  } else if (safeguard_ == Safeguard::CLAMP) {
    // sign(0) counts as +1 so the clamp always has a usable denominator
    const double denom = sel.value < 0.0 ? -epsilon_ : epsilon_;
    theta_[sel.index] += e / denom;
    rec.applied = true;
  } else {
    rec.applied = false;
  }
  last_selected_ = sel.index;
  return rec;
}

}  // namespace amp
