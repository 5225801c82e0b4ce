#include "amp/matching_pursuit.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "amp/numerics.hpp"

namespace amp {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void check_dictionary(const SampledDictionary& dict, std::size_t n) {
  if (dict.columns.empty()) {
    throw std::invalid_argument("sampled dictionary is empty");
  }
  for (std::size_t i = 0; i < dict.columns.size(); ++i) {
    const std::vector<double>& col = dict.columns[i];
    if (col.size() != n) {
      std::ostringstream msg;
      msg << "dictionary column " << i << " has length " << col.size()
          << ", signal has length " << n;
      throw std::invalid_argument(msg.str());
    }
    const double norm = l2_norm(col);
    if (std::abs(norm - 1.0) > 1e-9) {
      std::ostringstream msg;
      msg << "dictionary column " << i << " is not unit norm (norm = " << norm
          << ")";
      throw std::invalid_argument(msg.str());
    }
  }
}

}  // namespace

MpResult decompose(const SampledSignal& f, const SampledDictionary& dict,
                   std::size_t max_iters, double tol) {
  if (f.values.empty()) {
    throw std::invalid_argument("signal is empty");
  }
  if (max_iters == 0) {
    throw std::invalid_argument("max_iters must be at least 1");
  }
  if (tol < 0.0) {
    throw std::invalid_argument("tol must be non-negative");
  }
  check_dictionary(dict, f.values.size());

  MpResult result;
  result.residual = f.values;
  result.residual_norms.push_back(l2_norm(result.residual));

  while (result.picks.size() < max_iters &&
         result.residual_norms.back() > tol) {
    std::size_t best = 0;
    double best_corr = 0.0;
    double best_abs = -1.0;
    for (std::size_t i = 0; i < dict.columns.size(); ++i) {
      const double corr = dot(result.residual, dict.columns[i]);
      if (std::abs(corr) > best_abs) {
        best_abs = std::abs(corr);
        best_corr = corr;
        best = i;
      }
    }
    const std::vector<double>& g = dict.columns[best];
    for (std::size_t j = 0; j < result.residual.size(); ++j) {
      result.residual[j] -= best_corr * g[j];
    }
    result.picks.push_back({best, best_corr});
    result.residual_norms.push_back(l2_norm(result.residual));
  }
  return result;
}

SampledSignal reconstruct(const MpResult& result, const SampledDictionary& dict) {
  if (dict.columns.empty()) {
    throw std::invalid_argument("sampled dictionary is empty");
  }
  SampledSignal out;
  out.values.assign(dict.columns[0].size(), 0.0);
  for (const MpPick& pick : result.picks) {
    if (pick.index >= dict.columns.size()) {
      std::ostringstream msg;
      msg << "pick index " << pick.index << " out of range for dictionary of "
          << dict.columns.size() << " columns";
      throw std::out_of_range(msg.str());
    }
    const std::vector<double>& g = dict.columns[pick.index];
    for (std::size_t j = 0; j < out.values.size(); ++j) {
      out.values[j] += pick.coefficient * g[j];
    }
  }
  return out;
}

SampledDictionary sample_dictionary(const Dictionary& dict,
                                    const std::vector<double>& grid) {
  if (grid.empty()) {
    throw std::invalid_argument("sampling grid is empty");
  }
  SampledDictionary out;
  out.columns.reserve(dict.atoms.size());
  for (std::size_t i = 0; i < dict.atoms.size(); ++i) {
    std::vector<double> col(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
      col[j] = atom_eval(dict.atoms[i], grid[j]);
    }
    const double norm = l2_norm(col);
    if (norm <= 0.0) {
      std::ostringstream msg;
      msg << "atom " << i << " is zero on the sampling grid";
      throw std::invalid_argument(msg.str());
    }
    for (double& v : col) v /= norm;
    out.columns.push_back(std::move(col));
  }
  return out;
}

}  // namespace amp
