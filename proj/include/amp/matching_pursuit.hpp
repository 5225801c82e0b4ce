#pragma once

#include <cstddef>
#include <vector>

#include "amp/dictionary.hpp"

namespace amp {

struct SampledSignal {
  std::vector<double> values;
};

// Finite dictionary sampled on the signal grid; every column must have unit
// L2 norm within 1e-9.
struct SampledDictionary {
  std::vector<std::vector<double>> columns;
};

struct MpPick {
  std::size_t index = 0;
  double coefficient = 0.0;
};

struct MpResult {
  std::vector<MpPick> picks;
  std::vector<double> residual;
  // residual_norms[0] is the norm of the input; one more entry per pick.
  std::vector<double> residual_norms;
};

// Greedy pursuit: repeatedly pick argmax_i |<residual, column_i>| (ties go
// to the lowest index), record the inner product as the coefficient and
// subtract the projection.  Stops when the residual norm drops to tol or
// after max_iters picks, whichever comes first.
MpResult decompose(const SampledSignal& f, const SampledDictionary& dict,
                   std::size_t max_iters, double tol);

// Sum of coefficient * column over the picks.
SampledSignal reconstruct(const MpResult& result, const SampledDictionary& dict);

// Evaluate every atom at the given grid points and rescale each column to
// unit L2 norm, so a function dictionary can feed decompose().
SampledDictionary sample_dictionary(const Dictionary& dict,
                                    const std::vector<double>& grid);

}  // namespace amp
