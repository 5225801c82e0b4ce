#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace amp {

// Neumaier-compensated sum: error stays near one ulp of the true sum even
// when intermediate partial sums cancel.
inline double compensated_sum(std::span<const double> v) {
  double s = 0.0;
  double c = 0.0;
  for (double x : v) {
    double t = s + x;
    if (std::abs(s) >= std::abs(x)) {
      c += (s - t) + x;
    } else {
      c += (x - t) + s;
    }
    s = t;
  }
  return s + c;
}

// Compensated dot product (Ogita-Rump-Oishi dot2). The fma recovers each
// product's rounding residue exactly, so the result is accurate to ~1 ulp of
// the true value regardless of cancellation between terms. The identifier's
// post-update interpolation bound relies on this.
inline double compensated_dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  double c = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double p = a[i] * b[i];
    c += std::fma(a[i], b[i], -p);
    double t = s + p;
    if (std::abs(s) >= std::abs(p)) {
      c += (s - t) + p;
    } else {
      c += (p - t) + s;
    }
    s = t;
  }
  return s + c;
}

inline double l2_norm(std::span<const double> v) {
  return std::sqrt(compensated_dot(v, v));
}

// Wraps x into [0, period). fmod is exact, so inputs that reduce to the same
// representable point always produce bit-identical results.
inline double wrap_period(double x, double period) {
  double r = std::fmod(x, period);
  if (r < 0.0) {
    r += period;
  }
  if (r >= period) {
    r -= period;  // the += above can round up to exactly period
  }
  return r;
}

}  // namespace amp
