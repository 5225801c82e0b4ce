#pragma once

#include <complex>
#include <span>
#include <vector>

namespace amp {

// Expand prod(z - p_i) = z^n + c_1 z^(n-1) + ... + c_n and return s_i = -c_i,
// the coefficients of the recursion y_m(k) = sum_i s_i y_m(k-i) + r(k).
// Conjugate pairs are folded into real quadratics, so the result is exactly
// real.  Rejects poles on or outside the unit circle and unpaired complex
// poles.
std::vector<double> poles_to_coefficients(
    const std::vector<std::complex<double>>& poles);

// Roots of h(z) = z^n - s_1 z^(n-1) - ... - s_n (companion-matrix
// eigenvalues); inverse of poles_to_coefficients up to ordering.
std::vector<std::complex<double>> recursion_roots(
    const std::vector<double>& s);

// sum_i s[i] * history[i], accumulated left to right.  Every consumer of the
// feedback term goes through this one function so the closed-loop identities
// hold bitwise.
double history_feedback(std::span<const double> s,
                        std::span<const double> history);

struct ControlRecord {
  double u = 0.0;
  double f_hat = 0.0;
  double r = 0.0;
  double feedback_term = 0.0;
};

// u = (-f_hat + feedback) + r, in exactly that association.
ControlRecord control_from_feedback(double f_hat, double feedback, double r);

// Stable linear recursion y_m(k) = sum_i s_i y_m(k-i) + r(k); history[0] is
// the most recent output.
class ReferenceModel {
 public:
  explicit ReferenceModel(std::vector<double> s,
                          std::vector<double> initial_history = {});

  // Feedback term over the current history; shared verbatim by step() and
  // the control law.
  double feedback() const { return history_feedback(s_, history_); }

  // y_m(k) = feedback() + r; shifts the history and returns y_m(k).
  double step(double r);

  // Shift the history without computing anything (the closed loop computes
  // y_m itself so the same feedback value can feed the controller).
  void push_output(double y_m);

  const std::vector<double>& coefficients() const { return s_; }
  const std::vector<double>& history() const { return history_; }

 private:
  std::vector<double> s_;
  std::vector<double> history_;
};

// Control law using the reference model's own output history.
ControlRecord control_law(double f_hat, const ReferenceModel& model, double r);

// eta = f_true - f_hat; with zero noise this equals y - y_m in the loop.
double matching_error(double f_true, double f_hat);

}  // namespace amp
