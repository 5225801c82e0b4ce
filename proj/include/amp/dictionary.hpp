#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "amp/wavelets.hpp"

namespace amp {

struct ScalarizationMap {
  std::vector<double> weights;  // one per regressor component
  double offset = 5.0;
  double period = 10.0;
};

// s = mod(sum_i weights[i] * regressor[i] + offset, period), in [0, period).
// The weighted sum is accumulated left to right; the order is part of the
// trace contract.
double scalarize(const ScalarizationMap& map, std::span<const double> regressor);

struct Atom {
  TabulatedFunction shape;  // tabulated on the natural support [0, L-1]
  Family family = Family::HAAR;
  Kind kind = Kind::SCALING;
  double shift = 0.0;  // seconds
  double scale = 1.0;  // > 0, stretches the support to width (L-1)*scale
  double norm_constant = 1.0;
  double period = 10.0;
};

// Wraps x into [0, period), shifts, then linearly interpolates the
// tabulation; zero outside the (scaled) support. The interpolation form is
// pinned to (1-t)*lo + t*hi. Inputs that wrap to the same representable
// point give bit-identical values.
double atom_eval(const Atom& atom, double x);

struct DictionaryEntry {
  Family family = Family::DB2;
  Kind kind = Kind::SCALING;
  int shifts = 5;
  // > 0: explicit stretch. <= 0: auto, width period/shifts so the supports
  // of one entry tile [0, period) exactly.
  double scale = 0.0;
};

struct DictionaryConfig {
  std::vector<DictionaryEntry> entries;
  int levels = 10;  // cascade tabulation depth
  ScalarizationMap scalarization;
};

struct Dictionary {
  std::vector<Atom> atoms;
  ScalarizationMap scalarization;

  std::size_t size() const { return atoms.size(); }
};

// Builds unit-norm periodic atoms, ordered entry-major then shift-minor with
// shifts at i*period/shifts. Rejects configs with fewer than min_atoms atoms
// ("insufficient atoms"), atoms wider than the period, and dictionaries that
// leave part of [0, period) uncovered on the 0.01 grid.
Dictionary build_dictionary(const DictionaryConfig& config, std::size_t min_atoms);

// Component i is atom_eval(atoms[i], scalarize(scalarization, regressor)).
std::vector<double> evaluate_all(const Dictionary& dict, std::span<const double> regressor);

}  // namespace amp
