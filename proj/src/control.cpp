#include "amp/control.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace amp {

std::vector<double> poles_to_coefficients(
    const std::vector<std::complex<double>>& poles) {
  if (poles.empty()) {
    throw std::invalid_argument("pole placement needs at least one pole");
  }
  for (const std::complex<double>& p : poles) {
    if (!(std::abs(p) < 1.0)) {
      std::ostringstream msg;
      msg << "pole (" << p.real() << ", " << p.imag()
          << ") is not strictly inside the unit circle";
      throw std::invalid_argument(msg.str());
    }
  }

  std::vector<double> coeffs = {1.0};
  std::vector<bool> used(poles.size(), false);
  for (std::size_t i = 0; i < poles.size(); ++i) {
    if (used[i]) continue;
    std::vector<double> factor;
    if (poles[i].imag() == 0.0) {
      factor = {1.0, -poles[i].real()};
    } else {
      bool paired = false;
      for (std::size_t j = i + 1; j < poles.size(); ++j) {
        if (!used[j] && poles[j].real() == poles[i].real() &&
            poles[j].imag() == -poles[i].imag()) {
          used[j] = true;
          paired = true;
          break;
        }
      }
      if (!paired) {
        std::ostringstream msg;
        msg << "complex pole (" << poles[i].real() << ", " << poles[i].imag()
            << ") has no conjugate partner";
        throw std::invalid_argument(msg.str());
      }
      const double re = poles[i].real();
      const double im = poles[i].imag();
      factor = {1.0, -2.0 * re, re * re + im * im};
    }
    std::vector<double> next(coeffs.size() + factor.size() - 1, 0.0);
    for (std::size_t a = 0; a < coeffs.size(); ++a) {
      for (std::size_t b = 0; b < factor.size(); ++b) {
        next[a + b] += coeffs[a] * factor[b];
      }
    }
    coeffs = std::move(next);
  }

  std::vector<double> s(coeffs.size() - 1);
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = -coeffs[i + 1];
  return s;
}

std::vector<std::complex<double>> recursion_roots(
    const std::vector<double>& s) {
  if (s.empty()) {
    throw std::invalid_argument("recursion has no coefficients");
  }
  const Eigen::Index n = static_cast<Eigen::Index>(s.size());
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    companion(0, i) = s[static_cast<std::size_t>(i)];
  }
  for (Eigen::Index i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  const Eigen::EigenSolver<Eigen::MatrixXd> solver(companion);
  std::vector<std::complex<double>> roots(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    roots[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
  }
  return roots;
}

double history_feedback(std::span<const double> s,
                        std::span<const double> history) {
  if (s.size() != history.size()) {
    throw std::invalid_argument("feedback history length does not match the "
                                "coefficient count");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) acc += s[i] * history[i];
  return acc;
}

ControlRecord control_from_feedback(double f_hat, double feedback, double r) {
  if (!std::isfinite(f_hat)) {
    throw std::invalid_argument("control law received a non-finite model "
                                "prediction");
  }
  ControlRecord rec;
  rec.f_hat = f_hat;
  rec.r = r;
  rec.feedback_term = feedback;
  rec.u = (-f_hat + feedback) + r;
  return rec;
}

ReferenceModel::ReferenceModel(std::vector<double> s,
                               std::vector<double> initial_history)
    : s_(std::move(s)), history_(std::move(initial_history)) {
  if (s_.empty()) {
    throw std::invalid_argument("reference model needs at least one "
                                "coefficient");
  }
  if (history_.empty()) {
    history_.assign(s_.size(), 0.0);
  } else if (history_.size() != s_.size()) {
    throw std::invalid_argument("reference model history length does not "
                                "match the coefficient count");
  }
  for (const std::complex<double>& root : recursion_roots(s_)) {
    if (!(std::abs(root) < 1.0)) {
      std::ostringstream msg;
      msg << "reference model is unstable: characteristic root at ("
          << root.real() << ", " << root.imag() << ")";
      throw std::invalid_argument(msg.str());
    }
  }
}

double ReferenceModel::step(double r) {
  const double y_m = feedback() + r;
  push_output(y_m);
  return y_m;
}

void ReferenceModel::push_output(double y_m) {
  for (std::size_t i = history_.size() - 1; i > 0; --i) {
    history_[i] = history_[i - 1];
  }
  history_[0] = y_m;
}

ControlRecord control_law(double f_hat, const ReferenceModel& model,
                          double r) {
  return control_from_feedback(f_hat, model.feedback(), r);
}

double matching_error(double f_true, double f_hat) {
  return f_true - f_hat;
}

}  // namespace amp
