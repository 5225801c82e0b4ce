#include "amp/wavelets.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "amp/numerics.hpp"

namespace amp {

namespace {

// Reconstruction lowpass tables. Daubechies values come from spectral
// factorization of the maximally flat halfband polynomial carried out at
// 60-digit precision and rounded once to double; the spline filters are
// sqrt(2)/8 * [1, 3, 3, 1]. BIOR3_3 pads the spline filter to length 8 so
// the wavelet picks up the longer dual support of that family.
const std::vector<double>& family_lowpass(Family family) {
  static const std::vector<double> haar = {
      0.70710678118654752, 0.70710678118654752};
  static const std::vector<double> db2 = {
      0.48296291314453414, 0.83651630373780791,
      0.22414386804201338, -0.12940952255126038};
  static const std::vector<double> db3 = {
      0.33267055295008262, 0.80689150931109258, 0.45987750211849157,
      -0.13501102001025459, -0.085441273882026662, 0.035226291885709537};
  static const std::vector<double> db4 = {
      0.23037781330889650, 0.71484657055291565, 0.63088076792985891,
      -0.027983769416859854, -0.18703481171909308, 0.030841381835560764,
      0.032883011666885200, -0.010597401785069032};
  static const std::vector<double> db5 = {
      0.16010239797419291, 0.60382926979718967, 0.72430852843777293,
      0.13842814590132073, -0.24229488706638203, -0.032244869584638375,
      0.077571493840045714, -0.0062414902127982743, -0.012580751999081999,
      0.0033357252854737713};
  static const std::vector<double> bior3_1 = {
      0.17677669529663688, 0.53033008588991064,
      0.53033008588991064, 0.17677669529663688};
  static const std::vector<double> bior3_3 = {
      0.0, 0.17677669529663688, 0.53033008588991064, 0.53033008588991064,
      0.17677669529663688, 0.0, 0.0, 0.0};
  switch (family) {
    case Family::HAAR: return haar;
    case Family::DB2: return db2;
    case Family::DB3: return db3;
    case Family::DB4: return db4;
    case Family::DB5: return db5;
    case Family::BIOR3_1: return bior3_1;
    case Family::BIOR3_3: return bior3_3;
  }
  throw std::invalid_argument("unknown wavelet family");
}

std::string format_value(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// Values of the scaling function at the integers of its support, i.e. the
// fixed point of phi(i) = sqrt(2) * sum_n h_n phi(2i - n) with the endpoint
// values zero and the interior values summing to one. Solved as a stacked
// least-squares system; the unit eigenvalue is simple for every shipped
// filter, so the residual is at rounding level.
std::vector<double> integer_values(const std::vector<double>& h) {
  const int length = static_cast<int>(h.size());
  if (length == 2) {
    return {1.0, 0.0};  // unit indicator
  }
  const int interior = length - 2;
  const double root2 = std::numbers::sqrt2;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(interior + 1, interior);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(interior + 1);
  for (int i = 1; i <= interior; ++i) {
    for (int j = 1; j <= interior; ++j) {
      const int n = 2 * i - j;
      double v = (n >= 0 && n < length) ? root2 * h[static_cast<std::size_t>(n)] : 0.0;
      if (i == j) {
        v -= 1.0;
      }
      a(i - 1, j - 1) = v;
    }
  }
  a.row(interior).setOnes();
  b(interior) = 1.0;
  const Eigen::VectorXd phi = a.colPivHouseholderQr().solve(b);
  std::vector<double> out(static_cast<std::size_t>(length), 0.0);
  for (int i = 1; i <= interior; ++i) {
    out[static_cast<std::size_t>(i)] = phi(i - 1);
  }
  return out;
}

}  // namespace

bool is_orthogonal(Family family) {
  switch (family) {
    case Family::HAAR:
    case Family::DB2:
    case Family::DB3:
    case Family::DB4:
    case Family::DB5:
      return true;
    case Family::BIOR3_1:
    case Family::BIOR3_3:
      return false;
  }
  throw std::invalid_argument("unknown wavelet family");
}

std::string family_name(Family family) {
  switch (family) {
    case Family::HAAR: return "haar";
    case Family::DB2: return "db2";
    case Family::DB3: return "db3";
    case Family::DB4: return "db4";
    case Family::DB5: return "db5";
    case Family::BIOR3_1: return "bior3_1";
    case Family::BIOR3_3: return "bior3_3";
  }
  throw std::invalid_argument("unknown wavelet family");
}

std::string kind_name(Kind kind) {
  return kind == Kind::SCALING ? "scaling" : "wavelet";
}

WaveletFilter make_filter(Family family, Kind kind) {
  WaveletFilter f{family, kind, family_lowpass(family)};
  validate_filter(f);
  return f;
}

void validate_filter(const WaveletFilter& filter) {
  if (filter.lowpass.size() < 2) {
    throw std::invalid_argument("wavelet filter needs at least two lowpass coefficients");
  }
  const double sum = compensated_sum(filter.lowpass);
  if (std::abs(sum - std::numbers::sqrt2) > 1e-12) {
    throw std::invalid_argument(family_name(filter.family) +
                                ": lowpass coefficient sum " + format_value(sum) +
                                " violates sum(h) = sqrt(2)");
  }
  if (is_orthogonal(filter.family)) {
    const double square_sum = compensated_dot(filter.lowpass, filter.lowpass);
    if (std::abs(square_sum - 1.0) > 1e-12) {
      throw std::invalid_argument(family_name(filter.family) +
                                  ": lowpass squared sum " + format_value(square_sum) +
                                  " violates sum(h^2) = 1");
    }
  }
}

TabulatedFunction cascade_tabulate(const WaveletFilter& filter, int levels) {
  if (levels < 4 || levels > 16) {
    throw std::invalid_argument("cascade levels must lie in [4, 16], got " +
                                std::to_string(levels));
  }
  validate_filter(filter);
  const auto& h = filter.lowpass;
  const int length = static_cast<int>(h.size());
  const double root2 = std::numbers::sqrt2;

  std::vector<double> phi = integer_values(h);
  for (int level = 1; level <= levels; ++level) {
    const std::size_t count =
        static_cast<std::size_t>(length - 1) * (std::size_t{1} << level) + 1;
    const std::size_t prev_count = phi.size();
    const long long stride = 1ll << (level - 1);
    std::vector<double> next(count, 0.0);
    for (std::size_t i = 0; i < count; ++i) {
      if ((i & 1u) == 0) {
        next[i] = phi[i / 2];  // same point on the coarser grid
        continue;
      }
      double acc = 0.0;
      for (int n = 0; n < length; ++n) {
        const long long idx = static_cast<long long>(i) - stride * n;
        if (idx >= 0 && idx < static_cast<long long>(prev_count)) {
          acc += h[static_cast<std::size_t>(n)] * phi[static_cast<std::size_t>(idx)];
        }
      }
      next[i] = root2 * acc;
    }
    phi.swap(next);
  }

  if (filter.kind == Kind::WAVELET) {
    // psi(x) = sqrt(2) * sum_n g_n phi(2x - n), g_n = (-1)^n h_{L-1-n}
    std::vector<double> g(static_cast<std::size_t>(length));
    for (int n = 0; n < length; ++n) {
      g[static_cast<std::size_t>(n)] =
          ((n & 1) ? -1.0 : 1.0) * h[static_cast<std::size_t>(length - 1 - n)];
    }
    const std::size_t count = phi.size();
    const long long stride = 1ll << levels;
    std::vector<double> psi(count, 0.0);
    for (std::size_t i = 0; i < count; ++i) {
      double acc = 0.0;
      for (int n = 0; n < length; ++n) {
        const long long idx = 2ll * static_cast<long long>(i) - stride * n;
        if (idx >= 0 && idx < static_cast<long long>(count)) {
          acc += g[static_cast<std::size_t>(n)] * phi[static_cast<std::size_t>(idx)];
        }
      }
      psi[i] = root2 * acc;
    }
    phi.swap(psi);
  }

  TabulatedFunction out;
  out.samples = std::move(phi);
  out.x0 = 0.0;
  out.dx = std::ldexp(1.0, -levels);
  return out;
}

}  // namespace amp
