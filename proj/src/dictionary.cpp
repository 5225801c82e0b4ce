#include "amp/dictionary.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "amp/numerics.hpp"

namespace amp {

double scalarize(const ScalarizationMap& map, std::span<const double> regressor) {
  if (map.weights.size() != regressor.size()) {
    throw std::invalid_argument(
        "scalarization weights length " + std::to_string(map.weights.size()) +
        " does not match regressor length " + std::to_string(regressor.size()));
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < regressor.size(); ++i) {
    acc += map.weights[i] * regressor[i];
  }
  return wrap_period(acc + map.offset, map.period);
}

double atom_eval(const Atom& atom, double x) {
  const double wrapped = wrap_period(x, atom.period);
  const double local = wrap_period(wrapped - atom.shift, atom.period) / atom.scale;
  const double support = atom.shape.x_end() - atom.shape.x0;
  if (local > support) {
    return 0.0;
  }
  const auto& s = atom.shape.samples;
  const double pos = (local - atom.shape.x0) / atom.shape.dx;
  const std::size_t lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= s.size()) {
    return atom.norm_constant * s.back();
  }
  const double t = pos - static_cast<double>(lo);
  const double v = (1.0 - t) * s[lo] + t * s[lo + 1];
  return atom.norm_constant * v;
}

Dictionary build_dictionary(const DictionaryConfig& config, std::size_t min_atoms) {
  if (config.entries.empty()) {
    throw std::invalid_argument("dictionary config has no entries");
  }
  const double period = config.scalarization.period;
  if (!(period > 0.0)) {
    throw std::invalid_argument("dictionary period must be positive");
  }

  Dictionary dict;
  dict.scalarization = config.scalarization;
  for (const DictionaryEntry& entry : config.entries) {
    if (entry.shifts < 1) {
      throw std::invalid_argument("dictionary entry needs at least one shift");
    }
    const TabulatedFunction tab =
        cascade_tabulate(make_filter(entry.family, entry.kind), config.levels);
    const double support = tab.x_end() - tab.x0;
    const double scale =
        entry.scale > 0.0
            ? entry.scale
            : period / (static_cast<double>(entry.shifts) * support);
    const double width = support * scale;
    if (width > period) {
      throw std::invalid_argument(family_name(entry.family) + " " + kind_name(entry.kind) +
                                  " atom support " + std::to_string(width) +
                                  " exceeds the period");
    }
    // quadrature L2 norm over one period; endpoints are zero so the
    // rectangle rule is exact enough for the 1e-9 contract
    const double square =
        compensated_dot(tab.samples, tab.samples) * tab.dx * scale;
    if (!(square > 0.0)) {
      throw std::invalid_argument(family_name(entry.family) + " " + kind_name(entry.kind) +
                                  " tabulation has zero norm");
    }
    const double norm_constant = 1.0 / std::sqrt(square);
    for (int i = 0; i < entry.shifts; ++i) {
      Atom atom;
      atom.shape = tab;
      atom.family = entry.family;
      atom.kind = entry.kind;
      atom.shift = static_cast<double>(i) * period / static_cast<double>(entry.shifts);
      atom.scale = scale;
      atom.norm_constant = norm_constant;
      atom.period = period;
      dict.atoms.push_back(std::move(atom));
    }
  }

  if (dict.atoms.size() < min_atoms) {
    throw std::invalid_argument("insufficient atoms: dictionary has " +
                                std::to_string(dict.atoms.size()) +
                                ", experiment requires " + std::to_string(min_atoms));
  }

  // coverage: every 0.01-grid point must excite at least one atom
  std::ostringstream gaps;
  bool in_gap = false;
  double gap_start = 0.0;
  const int grid = static_cast<int>(std::llround(period / 0.01));
  for (int i = 0; i <= grid; ++i) {
    const double x = 0.01 * static_cast<double>(i);
    const bool last = i == grid;
    bool covered = last;  // closes a trailing gap
    if (!last) {
      for (const Atom& atom : dict.atoms) {
        if (std::abs(atom_eval(atom, x)) > 1e-6) {
          covered = true;
          break;
        }
      }
    }
    if (!covered && !in_gap) {
      in_gap = true;
      gap_start = x;
    } else if (covered && in_gap) {
      in_gap = false;
      gaps << " [" << gap_start << ", " << x << ")";
    }
  }
  if (gaps.tellp() > 0) {
    throw std::invalid_argument("dictionary coverage gaps:" + gaps.str());
  }
  return dict;
}

std::vector<double> evaluate_all(const Dictionary& dict, std::span<const double> regressor) {
  const double x = scalarize(dict.scalarization, regressor);
  std::vector<double> out(dict.atoms.size());
  for (std::size_t i = 0; i < dict.atoms.size(); ++i) {
    out[i] = atom_eval(dict.atoms[i], x);
  }
  return out;
}

}  // namespace amp
