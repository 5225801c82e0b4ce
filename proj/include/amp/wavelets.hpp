#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace amp {

enum class Family { HAAR, DB2, DB3, DB4, DB5, BIOR3_1, BIOR3_3 };
enum class Kind { SCALING, WAVELET };

// HAAR and DB2-DB5 are orthogonal; the BIOR families only normalize the
// reconstruction lowpass sum.
bool is_orthogonal(Family family);

// Lowercase token used by config files and diagnostics ("db2", "bior3_3", ...).
std::string family_name(Family family);
std::string kind_name(Kind kind);

struct WaveletFilter {
  Family family = Family::HAAR;
  Kind kind = Kind::SCALING;
  std::vector<double> lowpass;  // reconstruction lowpass coefficients
};

// Embedded coefficient table for the family, validated before return.
WaveletFilter make_filter(Family family, Kind kind);

// Throws std::invalid_argument naming the violated sum:
// sum(h) = sqrt(2) for every family, sum(h^2) = 1 for orthogonal ones,
// both within 1e-12.
void validate_filter(const WaveletFilter& filter);

struct TabulatedFunction {
  std::vector<double> samples;
  double x0 = 0.0;
  double dx = 1.0;

  double x_end() const { return x0 + dx * static_cast<double>(samples.size() - 1); }
};

// Tabulates the scaling function (kind SCALING) or its quadrature-mirror
// wavelet (kind WAVELET) at spacing 2^-levels over the natural support
// [0, L-1], L the filter length. Integer-point values come from the
// refinement fixed point; each dyadic refinement lands every lookup exactly
// on the coarser grid, so the tabulation satisfies the refinement relation
// to rounding error. levels must lie in [4, 16].
TabulatedFunction cascade_tabulate(const WaveletFilter& filter, int levels);

}  // namespace amp
